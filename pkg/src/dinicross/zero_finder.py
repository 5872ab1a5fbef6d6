"""Positive zeros of J, d, W and of the derivative families.

Bracketing follows the interlacing of the zero sets,

    alpha_n in (j_{n-1}, j_n),   gamma_n in (j_n, j_{n+1}),
    zeros of d' in (alpha_{n-1}, alpha_n)        (nu > 0),
    zeros of calD' in (alpha_n, alpha_{n+1}),
    zeros of calW' in (gamma_n, gamma_{n+1}),
    zeros of W' in (gamma_{n-1}, gamma_n)        (nu > -1/2),
                   (gamma_n, gamma_{n+1})        (nu < -1/2),

while the zeros of J_nu are bracketed by a sign scan up to a McMahon
estimate.  Brackets are bisected to width 1e-3 and finished by Newton.
Beyond the first SCAN_COUNT zeros the seeds come from extrapolating an
asymptotic fit of the zeros already found; each seed is accepted only if
a 1e-3 bracket around it shows a sign change and lies inside its
interlacing bracket.

All kernels are evaluated for a whole array of points at once from
(J_nu, J_{nu+1}, I_{nu+1}/I_nu) produced by backward recurrence, and are
rescaled so that no I_nu growth or x^nu factor is involved.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

import numpy as np

from .errors import BracketError, ConvergenceError, DomainError
from .report import Checker, VerificationReport
from .special_core import FunctionId, backward_recurrence, check_order

KINDS = ("J", "dini", "cross", "dini_prime", "calD_prime", "W_prime", "calW_prime")
SCAN_COUNT = 40
NEWTON_START = 1e-3
DEFAULT_TOL = 1e-12


@dataclass(frozen=True)
class ZeroTable:
    fn: str
    nu: float
    zeros: np.ndarray
    residuals: np.ndarray
    tol: float

    def __len__(self):
        return len(self.zeros)

    def __getitem__(self, n):
        """1-based access: table[1] is the smallest zero."""
        if n < 1:
            raise IndexError("zero indices start at 1")
        return float(self.zeros[n - 1])

    def head(self, count: int) -> "ZeroTable":
        return ZeroTable(self.fn, self.nu, self.zeros[:count], self.residuals[:count], self.tol)

    def to_csv(self) -> str:
        lines = ["index,zero,residual"]
        for i, (z, r) in enumerate(zip(self.zeros, self.residuals), 1):
            lines.append(f"{i},{z:.17g},{r:.17g}")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# kernels: (f, f') up to a positive factor, for x > 0

def _state(nu, x):
    J, J1, rho, _ = backward_recurrence(nu, x)
    x = np.asarray(x, dtype=float)
    dJ = nu / x * J - J1
    dJ1 = J - (nu + 1) / x * J1
    drho = 1.0 - (2 * nu + 1) * rho / x - rho * rho
    return x, J, J1, dJ, dJ1, rho, drho


def _k_j(nu, x):
    x, J, J1, dJ, dJ1, rho, drho = _state(nu, x)
    return J, dJ


def _k_dini(nu, x):
    x, J, J1, dJ, dJ1, rho, drho = _state(nu, x)
    return J - x * J1, dJ - J1 - x * dJ1


def _k_cross(nu, x):
    # W / I_nu
    x, J, J1, dJ, dJ1, rho, drho = _state(nu, x)
    return J1 + rho * J, dJ1 + drho * J + rho * dJ


def _k_dini_prime(nu, x):
    x, J, J1, dJ, dJ1, rho, drho = _state(nu, x)
    f = (nu / x - x) * J + (nu - 1) * J1
    fp = (-nu / x ** 2 - 1) * J + (nu / x - x) * dJ + (nu - 1) * dJ1
    return f, fp


def _k_cald_prime(nu, x):
    # x d' - nu d = x (-x J + (2nu-1) J1), and calD' has the sign of that
    x, J, J1, dJ, dJ1, rho, drho = _state(nu, x)
    return -x * J + (2 * nu - 1) * J1, -J - x * dJ + (2 * nu - 1) * dJ1


def _k_w_prime(nu, x):
    # W' / I_nu = 2 J_nu - (W / I_nu) / x
    x, J, J1, dJ, dJ1, rho, drho = _state(nu, x)
    w = J1 + rho * J
    dw = dJ1 + drho * J + rho * dJ
    return 2 * J - w / x, 2 * dJ - dw / x + w / x ** 2


def _k_calw_prime(nu, x):
    # x W' - (2nu+1) W = 2 I_nu (x J_nu - (nu+1) W/I_nu), the sign of calW'
    x, J, J1, dJ, dJ1, rho, drho = _state(nu, x)
    w = J1 + rho * J
    dw = dJ1 + drho * J + rho * dJ
    return x * J - (nu + 1) * w, J + x * dJ - (nu + 1) * dw


KERNELS = {
    "J": _k_j,
    "dini": _k_dini,
    "cross": _k_cross,
    "dini_prime": _k_dini_prime,
    "calD_prime": _k_cald_prime,
    "W_prime": _k_w_prime,
    "calW_prime": _k_calw_prime,
}


def kernel(kind: str, nu: float, x):
    """(f, f') of the rooted function, vectorized over x > 0."""
    return KERNELS[kind](nu, np.atleast_1d(np.asarray(x, dtype=float)))


# ---------------------------------------------------------------------------
# root refinement

def _refine(kind, nu, lo, hi, tol):
    """Zeros inside sign-change brackets: bisection to 1e-3, then Newton."""
    lo = np.array(lo, dtype=float)
    hi = np.array(hi, dtype=float)
    k = KERNELS[kind]
    flo = k(nu, lo)[0]
    fhi = k(nu, hi)[0]
    bad = ~(np.sign(flo) * np.sign(fhi) < 0)
    if bad.any():
        i = int(np.flatnonzero(bad)[0])
        raise BracketError(f"{kind}(nu={nu}): no sign change on [{lo[i]!r}, {hi[i]!r}]")
    slo = np.sign(flo)
    while True:
        wide = (hi - lo) > NEWTON_START * (1 + 1e-9)
        if not wide.any():
            break
        idx = np.flatnonzero(wide)
        mid = 0.5 * (lo[idx] + hi[idx])
        fm = k(nu, mid)[0]
        left = np.sign(fm) == slo[idx]
        lo[idx] = np.where(left, mid, lo[idx])
        hi[idx] = np.where(left, hi[idx], mid)
    x = 0.5 * (lo + hi)
    done = np.zeros(x.shape, dtype=bool)
    for _ in range(8):
        idx = np.flatnonzero(~done)
        if idx.size == 0:
            break
        f, fp = k(nu, x[idx])
        same = np.sign(f) == slo[idx]
        lo[idx] = np.where(same, x[idx], lo[idx])
        hi[idx] = np.where(same, hi[idx], x[idx])
        step = f / fp
        xc = x[idx]
        xn = xc - step
        escaped = ~np.isfinite(xn) | (xn <= lo[idx]) | (xn >= hi[idx])
        # a converged step may poke out of the shrunken bracket by rounding only
        conv = (f == 0) | (np.abs(step) <= tol * np.maximum(1.0, np.abs(xc)))
        xn = np.where(escaped, np.where(conv, xc, 0.5 * (lo[idx] + hi[idx])), xn)
        x[idx] = xn
        done[idx] = conv
    idx = np.flatnonzero(~done)
    while idx.size:
        mid = 0.5 * (lo[idx] + hi[idx])
        fm = k(nu, mid)[0]
        left = np.sign(fm) == slo[idx]
        lo[idx] = np.where(left, mid, lo[idx])
        hi[idx] = np.where(left, hi[idx], mid)
        x[idx] = 0.5 * (lo[idx] + hi[idx])
        narrow = (hi[idx] - lo[idx]) <= tol * np.maximum(1.0, x[idx])
        idx = idx[~narrow]
    f, fp = k(nu, x)
    res = np.abs(f)
    slack = 10 * tol * np.maximum(1.0, x) * np.abs(fp)
    if np.any(res > slack):
        i = int(np.argmax(res - slack))
        raise ConvergenceError(f"{kind}(nu={nu}): residual {res[i]!r} at {x[i]!r} above bound {slack[i]!r}")
    return x, res


def _fit_asymptotic(n, z):
    """Least-squares fit z_n ~ pi n + a0 + a1/b + a2/b^2 + a3/b^3 with b = pi(n + phase)."""
    phase = z[-1] / math.pi - n[-1]
    b = math.pi * (n + phase)
    A = np.column_stack([np.ones_like(b), 1 / b, 1 / b ** 2, 1 / b ** 3])
    coef, *_ = np.linalg.lstsq(A, z - math.pi * n, rcond=None)

    def predict(m):
        bm = math.pi * (m + phase)
        return math.pi * m + coef[0] + coef[1] / bm + coef[2] / bm ** 2 + coef[3] / bm ** 3

    return predict


def _extend(kind, nu, first, count, tol, interlace):
    """Zeros first+1..count seeded from the asymptotic fit of the known ones."""
    known = first
    n = np.arange(len(known) - 11, len(known) + 1, dtype=float)
    predict = _fit_asymptotic(n, known[-12:])
    m = np.arange(len(known) + 1, count + 1, dtype=float)
    guess = predict(m)
    half = 0.5 * NEWTON_START
    lo, hi = guess - half, guess + half
    f = KERNELS[kind](nu, np.concatenate([lo, hi]))[0]
    ok = np.sign(f[: len(m)]) * np.sign(f[len(m):]) < 0
    if interlace is not None:
        blo, bhi = interlace(m.astype(int))
        ok &= (lo > blo) & (hi < bhi)
    else:
        blo = bhi = None
    zeros = np.empty(len(m))
    res = np.empty(len(m))
    if ok.any():
        zeros[ok], res[ok] = _refine(kind, nu, lo[ok], hi[ok], tol)
    if (~ok).any():
        if blo is None:
            raise BracketError(f"{kind}(nu={nu}): asymptotic seed failed for index {int(m[~ok][0])}")
        zeros[~ok], res[~ok] = _refine(kind, nu, blo[~ok], bhi[~ok], tol)
    return zeros, res


def _mcmahon(nu, n):
    return (n + nu / 2 - 0.25) * math.pi


def _scan_j(nu, count, tol):
    """First `count` zeros of J_nu from a sign scan with step 0.05."""
    step = 0.05
    xmax = max(_mcmahon(nu, count), 1.0) + math.pi
    for _ in range(4):
        grid = np.arange(1e-3, xmax + step, step)
        f = KERNELS["J"](nu, grid)[0]
        change = np.flatnonzero(np.sign(f[:-1]) * np.sign(f[1:]) < 0)
        if len(change) >= count:
            change = change[:count]
            return _refine("J", nu, grid[change], grid[change + 1], tol)
        xmax += math.pi * (count - len(change) + 1)
    raise BracketError(f"J(nu={nu}): found {len(change)} of {count} zeros after 3 expansions")


def _solve_table(kind, nu, count, tol, brackets):
    """brackets(indices) -> (lo, hi) interlacing brackets for 1-based indices."""
    head = min(count, SCAN_COUNT)
    idx = np.arange(1, head + 1)
    if brackets is None:
        z, r = _scan_j(nu, head, tol)
    else:
        lo, hi = brackets(idx)
        z, r = _refine(kind, nu, lo, hi, tol)
    if count > head:
        z2, r2 = _extend(kind, nu, z, count, tol, brackets)
        z = np.concatenate([z, z2])
        r = np.concatenate([r, r2])
    if brackets is not None:
        lo, hi = brackets(np.arange(1, count + 1))
        if not np.all((z > lo) & (z < hi)):
            i = int(np.flatnonzero(~((z > lo) & (z < hi)))[0])
            raise BracketError(f"{kind}(nu={nu}): zero {i + 1} left its interlacing bracket")
    if not np.all(np.diff(z) > 0):
        raise BracketError(f"{kind}(nu={nu}): zeros not strictly increasing")
    return z, r


# ---------------------------------------------------------------------------
# memoized tables

_CACHE: dict[tuple[str, float], ZeroTable] = {}
_LOCK = threading.Lock()


def _cached(kind, nu, count, tol, build):
    key = (kind, float(nu))
    t = _CACHE.get(key)
    if t is not None and len(t) >= count and t.tol <= tol:
        return t if len(t) == count else t.head(count)
    z, r = build()
    z.flags.writeable = False
    r.flags.writeable = False
    table = ZeroTable(kind, float(nu), z, r, tol)
    with _LOCK:
        old = _CACHE.get(key)
        if old is None or len(old) <= count:
            _CACHE[key] = table
    return table


def _check_request(count, tol):
    if count < 1:
        raise DomainError("count must be at least 1")
    if tol < 1e-13:
        raise DomainError("tol must be at least 1e-13")


def bessel_j_zeros(nu: float, count: int, tol: float = DEFAULT_TOL) -> ZeroTable:
    """j_{nu,1..count}."""
    nu = check_order(nu)
    _check_request(count, tol)
    return _cached("J", nu, count, tol, lambda: _solve_table("J", nu, count, tol, None))


def _gap_brackets(table_fn, shift, floor):
    """Brackets (z_{n-1+shift}, z_{n+shift}) from another table, z_0 = floor."""
    def brackets(idx):
        top = int(idx.max()) + shift
        z = np.concatenate([[floor], table_fn(top).zeros])
        return z[idx - 1 + shift], z[idx + shift]
    return brackets


def dini_zeros(nu: float, count: int, tol: float = DEFAULT_TOL) -> ZeroTable:
    """alpha_{nu,1..count}, zeros of d_nu (equivalently of calD_nu)."""
    nu = check_order(nu)
    _check_request(count, tol)
    j = lambda c: bessel_j_zeros(nu, c, tol)  # noqa: E731
    floor = 1e-6 * j(1)[1]
    return _cached("dini", nu, count, tol,
                   lambda: _solve_table("dini", nu, count, tol, _gap_brackets(j, 0, floor)))


def cross_zeros(nu: float, count: int, tol: float = DEFAULT_TOL) -> ZeroTable:
    """gamma_{nu,1..count}, zeros of W_nu (equivalently of calW_nu)."""
    nu = check_order(nu)
    _check_request(count, tol)
    j = lambda c: bessel_j_zeros(nu, c, tol)  # noqa: E731
    return _cached("cross", nu, count, tol,
                   lambda: _solve_table("cross", nu, count, tol, _gap_brackets(j, 1, 0.0)))


def derivative_zeros(which: str, nu: float, count: int, tol: float = DEFAULT_TOL) -> ZeroTable:
    """Zeros of d'_nu (which="dini_prime", nu > 0), of calD'_nu, calW'_nu or W'_nu."""
    nu = check_order(nu)
    _check_request(count, tol)
    if which == "dini_prime":
        if nu <= 0:
            raise DomainError("zeros of d'_nu are only bracketed for nu > 0")
        a = lambda c: dini_zeros(nu, c, tol)  # noqa: E731
        br = _gap_brackets(a, 0, 1e-6 * a(1)[1])
    elif which == "calD_prime":
        a = lambda c: dini_zeros(nu, c, tol)  # noqa: E731
        br = _gap_brackets(a, 1, 0.0)
    elif which == "calW_prime":
        g = lambda c: cross_zeros(nu, c, tol)  # noqa: E731
        br = _gap_brackets(g, 1, 0.0)
    elif which == "W_prime":
        g = lambda c: cross_zeros(nu, c, tol)  # noqa: E731
        if nu == -0.5:
            raise DomainError("W'_{-1/2} does not vanish like z^{2nu}; no bracket rule at nu = -1/2")
        if nu > -0.5:
            br = _gap_brackets(g, 0, 1e-6 * g(1)[1])
        else:
            br = _gap_brackets(g, 1, 0.0)
    else:
        raise DomainError(f"unknown derivative family {which!r}")
    return _cached(which, nu, count, tol, lambda: _solve_table(which, nu, count, tol, br))


_BY_NAME = {
    "J": bessel_j_zeros,
    "dini": dini_zeros,
    "cross": cross_zeros,
}


def zeros(kind: str, nu: float, count: int, tol: float = DEFAULT_TOL) -> ZeroTable:
    kind = kind.replace("-", "_")
    if kind in _BY_NAME:
        return _BY_NAME[kind](nu, count, tol)
    return derivative_zeros(kind, nu, count, tol)


_FAMILY_KIND = {
    FunctionId.J: "J", FunctionId.CAL_J: "J",
    FunctionId.D: "dini", FunctionId.CAL_D: "dini",
    FunctionId.W: "cross", FunctionId.CAL_W: "cross",
}


def zeros_up_to(family, nu: float, bound: float) -> list[float]:
    """All positive zeros of an oscillating family not exceeding `bound`."""
    kind = _FAMILY_KIND[FunctionId(family)]
    count = max(4, int(bound / 3) + 4)
    while True:
        t = zeros(kind, nu, count)
        if t.zeros[-1] > bound:
            return [float(z) for z in t.zeros if z <= bound]
        count *= 2


def rescan(table: ZeroTable, brackets, samples: int = 64) -> list[int]:
    """Number of sign changes of the rooted function in each bracket at `samples` points."""
    out = []
    for lo, hi in brackets:
        x = np.linspace(lo, hi, samples + 1)
        f = kernel(table.fn, table.nu, x)[0]
        out.append(int(np.count_nonzero(np.sign(f[:-1]) * np.sign(f[1:]) < 0)))
    return out


def nu0(tol: float = 1e-12) -> float:
    """The root in (1, 2) of j_{nu,1}^2 = 8(nu + 1)."""
    from scipy.optimize import brentq

    if tol < 1e-12:
        raise DomainError("tol must be at least 1e-12")

    def g(nu):
        return _scan_j(nu, 1, DEFAULT_TOL)[0][0] ** 2 - 8 * (nu + 1)

    if not (g(1.0) < 0 < g(2.0)):
        raise BracketError("j_{nu,1}^2 - 8(nu+1) does not change sign on (1, 2)")
    return brentq(g, 1.0, 2.0, xtol=tol, rtol=4 * np.finfo(float).eps)


# ---------------------------------------------------------------------------
# tails of sums over zeros

def power_tail_bound(last_zero: float, p: float, eps: float = 0.05) -> float:
    """Upper bound on sum_{n>N} z_n^{-p} for zeros spaced at least pi(1-eps) apart."""
    if p <= 1:
        raise DomainError("tail bound needs p > 1")
    return last_zero ** (1 - p) / ((p - 1) * math.pi * (1 - eps))


def sum_with_tail(f, zs, safety: float = 4.0):
    """sum_n f(z_n) over all zeros, given the first N of them.

    The omitted part is estimated by the midpoint rule on the asymptotic
    lattice z ~ z_N + pi t, i.e. (1/pi) int_{z_N + pi/2}^inf f - (pi/24) f'(z_N + pi/2).
    The returned bound covers the size of that correction plus the drift of
    the actual zeros away from the lattice, times `safety`.
    Returns (partial, tail_estimate, tail_bound).
    """
    from scipy.integrate import quad

    zs = np.asarray(zs, dtype=float)
    partial = math.fsum(float(f(z)) for z in zs)
    zN = float(zs[-1])
    a = zN + 0.5 * math.pi
    h = 1e-3 * zN
    fp = (f(a + h) - f(a - h)) / (2 * h)
    integral, ierr = quad(f, a, math.inf, limit=200, epsabs=0, epsrel=1e-13)
    em = (math.pi / 24) * fp
    estimate = integral / math.pi - em
    drift = abs(zN - zs[-2] - math.pi) * zN / math.pi
    fpN = (f(zN + h) - f(zN - h)) / (2 * h)
    bound = safety * (abs(em) + drift * (abs(fpN) + abs(f(zN)) / math.pi)) + ierr / math.pi
    return partial, estimate, bound


# ---------------------------------------------------------------------------
# interlacing chain and figure data

def interlacing_chain(nu: float, count: int) -> VerificationReport:
    """alpha_n < j_n < gamma_n < alpha_{n+1} < j_{n+1} for n <= count."""
    nu = check_order(nu)
    if count < 1:
        raise DomainError("count must be at least 1")
    a = dini_zeros(nu, count + 1)
    j = bessel_j_zeros(nu, count + 1)
    g = cross_zeros(nu, count)
    chk = Checker("thm2")
    names = ("alpha_n", "j_n", "gamma_n", "alpha_n+1", "j_n+1")
    for n in range(1, count + 1):
        chain = (a[n], j[n], g[n], a[n + 1], j[n + 1])
        for i in range(4):
            chk.strict({"nu": nu, "n": n, "pair": f"{names[i]}<{names[i + 1]}"},
                       chain[i + 1] - chain[i])
    return chk.report(f"minimal gap {chk.min_margin:.3g} over n <= {count}")


def figure1_rows(nu: float, xmax: float, step: float):
    """Rows (x, x J'_nu/J_nu or None near poles, x I'_nu/I_nu) on (0, xmax]."""
    nu = check_order(nu)
    if not (xmax > 0 and step > 0):
        raise DomainError("xmax and step must be positive")
    n = int(math.floor(xmax / step + 1e-9))
    x = step * np.arange(1, n + 1)
    J, J1, rho, _ = backward_recurrence(nu, x)
    scale = np.hypot(J, J1)
    pole = np.abs(J) < 1e-12 * scale
    with np.errstate(divide="ignore", invalid="ignore"):
        f = nu - x * J1 / J
    g = nu + x * rho
    rows = [(0.0, float(nu), float(nu))]
    for xi, fi, gi, p in zip(x, f, g, pole):
        rows.append((float(xi), None if p else float(fi), float(gi)))
    return rows


def figure1_csv(rows) -> str:
    lines = ["x,f_nu,g_nu"]
    for x, f, g in rows:
        lines.append(f"{x:.17g},{'' if f is None else f'{f:.17g}'},{g:.17g}")
    return "\n".join(lines) + "\n"


def crossings(rows):
    """x where f_nu - g_nu changes sign from + to -, by linear interpolation.

    f_nu falls through every pole from -inf back to +inf; those jumps are
    - to + changes and are skipped, as are rows masked at poles.
    """
    out = []
    prev = None
    for x, f, g in rows:
        if f is None:
            prev = None
            continue
        d = f - g
        if prev is not None:
            px, pd = prev
            if pd > 0 >= d:
                out.append(px + (x - px) * pd / (pd - d))
        prev = (x, d)
    return out
