"""Two-sided bounds for -(2(nu+1)/(3x)) calD'/calD and -(4(nu+1)_3/x^3) calW'/calW.

With c = 4(nu+1)/3, z_k = alpha_{nu,k}^2 and the zero expansion of the
logarithmic derivative, M(x) (z_1 - x^2) - R_{2n}(x) = c x^{2n+2} A(x) where

    A(x) = -sum_{k>=2} (z_k - z_1) / (z_k^{n+1} (z_k - x^2)).

A is decreasing in x^2 from A(0) = b to A(alpha_1) = a, so the bounds hold
iff t = (A - a)/(b - a) lies in (0, 1).  Both t and 1 - t are sums of positive
terms over the zeros and are used as the margins.  The quartic bounds are the
same with gamma^4 in place of alpha^2 and c = 16(nu+1)_3.
"""

from __future__ import annotations

import math

from .. import rayleigh, zero_finder
from ..errors import DomainError
from ..report import Checker
from ._common import GridSpec, nus_for, poch3, val

ZERO_COUNT = 2000
ORDERS = (1, 2, 3)
MAX_ORDER = 4
DIRECT_REL_ERR = 1e-13


def _setup(kind, nu, n):
    if kind == "dini":
        z = zero_finder.dini_zeros(nu, ZERO_COUNT).zeros ** 2
        c = 4 * (nu + 1) / 3
        fam, power = "eta", 2
    else:
        z = zero_finder.cross_zeros(nu, ZERO_COUNT).zeros ** 4
        c = 16 * poch3(nu)
        fam, power = "zeta", 4
    R = rayleigh.recursion_values(fam, nu, n + 2)
    z1 = z[0]
    seq = [z1 * R[m] - R[m - 1] for m in range(1, n + 2)]   # A_1..A_{n+1}
    # a from the closed expression in the Rayleigh sums, b = A_{n+1}
    a = (1 - z1 * R[0] - sum(seq[m - 1] * z1 ** m for m in range(1, n + 1))) / z1 ** (n + 1)
    b = seq[n]
    return z, c, seq, a, b, power


def _remainder_t(z, n, y):
    """(t, 1 - t) at y = x^2 (or x^4) from positive sums over k >= 2."""
    zk = z[1:]
    z1 = z[0]
    lower = math.fsum(((z1 - y) / (zk ** (n + 1) * (zk - y))).tolist())
    upper = math.fsum(((zk - z1) * y / (zk ** (n + 2) * (zk - y))).tolist())
    width = lower + upper
    return lower / width, upper / width


def _middle(kind, nu, x):
    if kind == "dini":
        return -2 * (nu + 1) / (3 * x) * val("calD", nu, x, 1) / val("calD", nu, x)
    return -4 * poch3(nu) / x ** 3 * val("calW", nu, x, 1) / val("calW", nu, x)


def _claim(kind, claim, grid: GridSpec, orders):
    chk = Checker(claim)
    label = "alpha" if kind == "dini" else "gamma"
    if any(not 1 <= n <= MAX_ORDER for n in orders):
        raise DomainError(f"orders must lie in 1..{MAX_ORDER}")
    worst_const = 0.0
    for nu in nus_for(grid, lambda v: v > -1, claim):
        for n in orders:
            z, c, seq, a, b, power = _setup(kind, nu, n)
            first = z[0] ** (1 / power)
            # a also equals -sum_{k>=2} z_k^{-(n+1)}; compare the two routes
            a_zero = -math.fsum((z[1:] ** -(n + 1)).tolist())
            # the closed form subtracts two numbers of size z_1^{-(n+1)}
            scale = z[0] ** -(n + 1) + abs(a)
            tail = zero_finder.power_tail_bound(z[-1] ** (1 / power), power * (n + 1))
            const_gap = max(abs(a - a_zero) - tail, 0.0) / scale
            worst_const = max(worst_const, const_gap)
            for frac in grid.x_fractions:
                x = frac * first
                y = x ** power
                t, u = _remainder_t(z, n, y)
                p = {"nu": nu, "n": n, "x": x}
                chk.strict({**p, "side": "lower"}, t)
                chk.strict({**p, "side": "upper"}, u)
                # the same bounds assembled from function values
                M = _middle(kind, nu, x)
                R = z[0] + c * math.fsum(seq[m - 1] * y ** m for m in range(1, n + 1))
                L = (R + c * a * x ** (power * (n + 1))) / (z[0] - y)
                U = (R + c * b * x ** (power * (n + 1))) / (z[0] - y)
                err = DIRECT_REL_ERR * (abs(M) + abs(L) + abs(U))
                chk.at_least({**p, "side": "direct-lower"}, (M - L) / err, 1.0)
                chk.at_least({**p, "side": "direct-upper"}, (U - M) / err, 1.0)
            # sharpness: t -> 0 at the first zero, t -> 1 at the origin
            t_hi, _ = _remainder_t(z, n, (0.999 * first) ** power)
            _, u_lo = _remainder_t(z, n, (0.01 * first) ** power)
            chk.at_least({"nu": nu, "n": n, "check": f"a sharp at 0.999 {label}_1"}, 1e-2 - t_hi, 0.0)
            chk.at_least({"nu": nu, "n": n, "check": "b sharp at 0.01 x"}, 1e-2 - u_lo, 0.0)
            chk.at_least({"nu": nu, "n": n, "check": "a closed vs zero sum"}, 1e-12 - const_gap, 0.0)
            # M(x) (z_1 - x^p) tends to c at the first zero
            x = 0.999 * first
            lim = _middle(kind, nu, x) * (z[0] - x ** power)
            chk.at_least({"nu": nu, "n": n, "check": "endpoint limit of M (z_1 - x^p)"},
                         1e-2 - abs(lim - c) / c, 0.0)
    return chk.report(f"orders n={list(orders)}; direct-form margins in units of a "
                      f"{DIRECT_REL_ERR:g} relative error estimate; worst gap between the "
                      f"two expressions for the lower constant beyond the zero-sum tail {worst_const:.2e} "
                      f"(relative to z_1^-(n+1))")


def verify_thm10(grid: GridSpec, orders=ORDERS):
    return _claim("dini", "thm10", grid, orders)


def verify_thm11(grid: GridSpec, orders=ORDERS):
    return _claim("cross", "thm11", grid, orders)


def remainder_ratio(kind: str, nu: float, n: int, x: float) -> float:
    """t(x) in (0, 1): position of the middle expression between the two bounds."""
    z, *_ = _setup(kind, nu, n)
    power = 2 if kind == "dini" else 4
    return _remainder_t(z, n, x ** power)[0]


__all__ = ["verify_thm10", "verify_thm11", "remainder_ratio"]
