"""Sign, monotonicity, concavity and absolute monotonicity of calW.

Absolute monotonicity is tested with forward differences of orders 0..6 on
65 equispaced samples of [0, 0.9 * endpoint]; each difference is compared
against its stencil scale.  Concavity uses the evaluator's second
derivatives rather than second differences.
"""

from __future__ import annotations

import math

import numpy as np

from .. import rayleigh, zero_finder
from ..errors import HypothesisError
from ..report import Checker
from ..special_core import SERIES_SWITCH, evaluate, log_gamma, quartic_log_slope
from ._common import GridSpec, check_abs_monotone, gamma1, logn, nus_for, poch3, val

FD_SAMPLES = 64
FD_SPAN = 0.9


def quartic_slope(nu: float, t: float) -> float:
    """F(t) = -d/dt log calW(t^(1/4)) = sum_n 1/(gamma_n^4 - t)."""
    x = t ** 0.25
    if x <= SERIES_SWITCH:
        return quartic_log_slope(nu, t)
    return -val("calW", nu, x, 1) / (4 * x ** 3 * val("calW", nu, x))


def _sign_margin(chk, params, tag, nu, x, k, sign):
    """sign * f^(k)(x) > 0, scaled by the cancellation the evaluator reports."""
    r = evaluate(tag, nu, x, k)
    chk.strict(params, sign * r.value, abs(r.value) * 10 ** r.cancellation_digits)


def _t_grid(nu):
    return np.linspace(0.0, FD_SPAN * gamma1(nu) ** 4, FD_SAMPLES + 1)


def verify_thm1a(grid: GridSpec):
    chk = Checker("thm1a")
    for nu in nus_for(grid, lambda v: v > -1, "thm1a"):
        g = np.concatenate([[0.0], zero_finder.cross_zeros(nu, grid.n_max).zeros])
        for k in range(grid.n_max):
            for f in grid.x_fractions:
                x = g[k] + f * (g[k + 1] - g[k])
                for s in (1.0, -1.0):
                    _sign_margin(chk, {"nu": nu, "interval": k, "x": s * x}, "calW", nu, s * x, 0, (-1) ** k)
    return chk.report(f"negative on [gamma_(2n-1), gamma_2n] and its mirror, positive elsewhere; "
                      f"first {grid.n_max} intervals")


def verify_thm1b(grid: GridSpec):
    chk = Checker("thm1b")
    for nu in nus_for(grid, lambda v: v > -1, "thm1b"):
        g1 = gamma1(nu)
        for f in grid.x_fractions:
            _sign_margin(chk, {"nu": nu, "x": f * g1}, "calW", nu, f * g1, 1, -1.0)
            _sign_margin(chk, {"nu": nu, "x": -f * g1}, "calW", nu, -f * g1, 1, 1.0)
    return chk.report("sign of calW' on (-gamma_1, 0) and (0, gamma_1)")


def _positive_points(nu, grid):
    """Interior points of the intervals (gamma_2k, gamma_2k+1) where calW > 0."""
    g = np.concatenate([[0.0], zero_finder.cross_zeros(nu, grid.n_max).zeros])
    for k in range(0, grid.n_max, 2):
        for f in grid.x_fractions:
            yield g[k] + f * (g[k + 1] - g[k])


def _log_parts(tag, nu, x):
    w0, w1, w2 = (val(tag, nu, x, k) for k in range(3))
    return w1 / w0, w2 / w0


def verify_thm1c(grid: GridSpec):
    chk = Checker("thm1c")
    for nu in nus_for(grid, lambda v: v > -1, "thm1c"):
        for x in _positive_points(nu, grid):
            p, q = _log_parts("calW", nu, x)
            for s in (1.0, -1.0):
                chk.strict({"nu": nu, "x": s * x, "check": "(log calW)''"}, -(q - p * p), abs(q) + p * p)
            # geometric concavity: (x calW'/calW)' = p + x (q - p^2)
            chk.strict({"nu": nu, "x": x, "check": "(x calW'/calW)'"}, -(p + x * (q - p * p)),
                       abs(p) + x * (abs(q) + p * p))
    return chk.report("log-concavity off S (both signs of x) and geometric concavity on (0, inf) minus S_2")


def verify_thm1d(grid: GridSpec):
    chk = Checker("thm1d")
    for nu in nus_for(grid, lambda v: v >= -0.5, "thm1d"):
        for x in _positive_points(nu, grid):
            p, q = _log_parts("calW", nu, x)
            # log W = const + (2nu+1) log x + log calW
            second = -(2 * nu + 1) / x ** 2 + q - p * p
            chk.strict({"nu": nu, "x": x}, -second, (2 * nu + 1) / x ** 2 + abs(q) + p * p)
    return chk.report("(log W)'' < 0 on (0, inf) minus S_2 for nu >= -1/2")


def verify_thm1e(grid: GridSpec):
    chk = Checker("thm1e")
    nus = sorted(nus_for(grid, lambda v: v > -1, "thm1e"))
    for nu1, nu2 in zip(nus, nus[1:]):
        g1 = zero_finder.cross_zeros(nu1, grid.n_max + 1).zeros
        g2 = zero_finder.cross_zeros(nu2, grid.n_max + 1).zeros
        for n in range(grid.n_max):
            chk.strict({"nu1": nu1, "nu2": nu2, "n": n + 1, "check": "gamma increasing in nu"}, g2[n] - g1[n], g2[n])
        for f in grid.x_fractions:
            for x in (f * g1[0], -f * g1[0]):
                a, b = logn("calW", nu1, x), logn("calW", nu2, x)
                chk.nonstrict({"nu1": nu1, "nu2": nu2, "x": x, "check": "calW"}, b - a, max(abs(a), abs(b), 1e-300))
        # x calW'/calW is compared only where no zero sweeps across x between the two orders
        windows = [(0.0, g1[0])] + [(g2[n], g1[n + 1]) for n in range(grid.n_max) if g2[n] < g1[n + 1]]
        for lo, hi in windows:
            for f in grid.x_fractions:
                x = lo + f * (hi - lo)
                a = x * val("calW", nu1, x, 1) / val("calW", nu1, x)
                b = x * val("calW", nu2, x, 1) / val("calW", nu2, x)
                chk.nonstrict({"nu1": nu1, "nu2": nu2, "x": x, "check": "x calW'/calW"}, b - a, max(abs(a), abs(b)))
    return chk.report("adjacent-order comparisons; x calW'/calW sampled on (0, gamma_1) and on the gaps "
                      "(gamma_{nu2,n}, gamma_{nu1,n+1}) that no zero crosses between the two orders")


def verify_thm1f(grid: GridSpec):
    chk = Checker("thm1f")
    for nu in nus_for(grid, lambda v: v > -1, "thm1f"):
        ts = _t_grid(nu)
        check_abs_monotone(chk, "F", [quartic_slope(nu, t) for t in ts], {"nu": nu})
        check_abs_monotone(chk, "1/calW", [math.exp(-logn("calW", nu, t ** 0.25)) for t in ts], {"nu": nu})
    return chk.report(f"differences of orders 0..6 on [0, {FD_SPAN} gamma_1^4] with step 1/{FD_SAMPLES}")


def verify_thm5(grid: GridSpec, series_terms: int = 12):
    chk = Checker("thm5")
    worst = 0.0
    for nu in nus_for(grid, lambda v: v > -1, "thm5"):
        zeta = rayleigh.recursion_values("zeta", nu, series_terms)
        for m in range(8):
            chk.strict({"nu": nu, "m": m + 1, "check": "zeta_4m > 0"}, zeta[m], zeta[m])
        g1 = gamma1(nu)
        xs = np.linspace(0.0, FD_SPAN * g1, FD_SAMPLES + 1)
        phi = [0.0] + [-x * val("calW", nu, x, 1) / val("calW", nu, x) for x in xs[1:]]
        check_abs_monotone(chk, "-x calW'/calW", phi, {"nu": nu})
        # the series of the logarithmic derivative in the zeta sums
        x = 0.5 * g1
        direct = -x * val("calW", nu, x, 1) / val("calW", nu, x)
        series = 4 * math.fsum(zeta[m] * x ** (4 * m + 4) for m in range(series_terms))
        gap = abs(direct - series) / direct
        worst = max(worst, gap)
        chk.at_least({"nu": nu, "check": "series at gamma_1/2"}, 1e-10 - gap, 0.0)
    return chk.report(f"zeta_4m > 0 for m <= 8; differences orders 0..6 on [0, {FD_SPAN} gamma_1]; "
                      f"series with {series_terms} zeta sums matches at gamma_1/2 to {worst:.1e}")


def _log_c(nu):
    """log of C_nu = 1/(2^(2nu) Gamma(nu+1) Gamma(nu+2))."""
    return -(2 * nu * math.log(2) + log_gamma(nu + 1) + log_gamma(nu + 2))


def thm6_functions(mu: float, nu: float):
    """(f, g, h, q) of t on [0, gamma_{nu,1}^4), built from the normalized cross-product."""
    if mu < nu:
        raise HypothesisError(f"need mu >= nu, got mu={mu}, nu={nu}")
    c = (1 / poch3(mu) - 1 / poch3(nu)) / 16
    lc = _log_c(mu) - _log_c(nu)
    k = 1 / (16 * poch3(nu))

    def f(t):
        return quartic_slope(nu, t) - quartic_slope(mu, t) + c

    def g(t):
        x = t ** 0.25
        return math.exp(lc + c * t + logn("calW", mu, x) - logn("calW", nu, x))

    def h(t):
        return quartic_slope(nu, t) - k

    def q(t):
        return math.exp(-k * t - _log_c(nu) - logn("calW", nu, t ** 0.25))

    return f, g, h, q


def verify_thm6(grid: GridSpec, pairs=None):
    chk = Checker("thm6")
    if pairs is None:
        nus = sorted(nus_for(grid, lambda v: v > -1, "thm6"))
        pairs = [(b, a) for a, b in zip(nus, nus[1:])] + [(v, v) for v in nus]
    worst_sum = 0.0
    for mu, nu in pairs:
        f, g, h, q = thm6_functions(mu, nu)
        ts = _t_grid(nu)
        p = {"mu": mu, "nu": nu}
        for label, fn in (("f", f), ("g", g), ("h", h), ("q", q)):
            check_abs_monotone(chk, label, [fn(t) for t in ts], p)
        chk.at_least({**p, "check": "h(0) = 0"}, 1e-10 - abs(h(0.0)), 0.0)
        chk.at_least({**p, "check": "f(0) = 0"}, 1e-10 - abs(f(0.0)), 0.0)
        # cross-check F against its sum over the zeros at mid-domain
        t = ts[len(ts) // 2]
        zs = zero_finder.cross_zeros(nu, 2000).zeros
        partial, est, bound = zero_finder.sum_with_tail(lambda z: 1 / (z ** 4 - t), zs)
        gap = abs(partial + est - quartic_slope(nu, t))
        worst_sum = max(worst_sum, gap / abs(partial))
        chk.at_least({**p, "check": "F vs zero sum"}, (bound + 1e-13 * abs(partial) - gap) / abs(partial), 0.0)
    return chk.report(f"pairs (mu, nu) = {pairs}; f, g, h, q from the series of calW; "
                      f"F matches its zero sum to {worst_sum:.1e}")


def verify_cor61(grid: GridSpec):
    chk = Checker("cor61")
    for nu in nus_for(grid, lambda v: v > -1, "cor61"):
        g1 = gamma1(nu)
        k = 1 / (16 * poch3(nu))
        for f in (0.0,) + tuple(grid.x_fractions):
            x = f * g1
            lw = logn("calW", nu, x)
            chk.nonstrict({"nu": nu, "x": x, "form": "log calW"}, -k * x ** 4 - lw, max(abs(lw), k * x ** 4, 1e-300))
            if x > 0:
                w = val("W", nu, x)
                bound = math.exp((2 * nu + 1) * math.log(x) - k * x ** 4 + _log_c(nu))
                chk.nonstrict({"nu": nu, "x": x, "form": "W"}, bound - w, bound)
    return chk.report("equivalent to calW(x) <= exp(-x^4/(16(nu+1)_3)); checked in log form and on W itself")
