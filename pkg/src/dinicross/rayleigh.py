"""Rayleigh sums (spectral zeta functions) of the zeros.

    eta_{2m}(nu)   = sum_n alpha_{nu,n}^{-2m}    zeros of the Dini function
    zeta_{4m}(nu)  = sum_n gamma_{nu,n}^{-4m}    zeros of the cross-product
    sigma_{2m}(nu) = sum_n j_{nu,n}^{-2m}        zeros of J_nu

Three routes: closed forms for the lowest orders, the Euler-Rayleigh
recursion on Taylor coefficients, and direct sums over computed zeros
with a bound on the omitted tail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from . import zero_finder
from .errors import DomainError, LengthError
from .special_core import check_order, pochhammer

FAMILIES = ("eta", "zeta", "sigma")
METHODS = ("closed", "recursion", "direct")
MAX_DEPTH = 12
DIRECT_COUNT = 2000

# power of the zeros per unit order, and the zero table behind each family
_POWER = {"eta": 2, "zeta": 4, "sigma": 2}
_KIND = {"eta": "dini", "zeta": "cross", "sigma": "J"}


@dataclass(frozen=True)
class RayleighValue:
    family: str
    nu: float
    m: int
    value: float
    method: str
    tail_err: float = 0.0

    def csv_row(self) -> str:
        return f"{self.family},{self.nu:.17g},{self.m},{self.method},{self.value:.17g},{self.tail_err:.17g}"


CSV_HEADER = "family,nu,m,method,value,tail_err"


def euler_rayleigh(coeffs, M: int) -> list:
    """Power sums S_1..S_M of the reciprocal zeros of 1 + a_1 z + a_2 z^2 + ...

    coeffs holds a_1, a_2, ... (a_0 = 1 implied).  Works for floats and Fractions.
    """
    if M < 1:
        raise DomainError("M must be at least 1")
    if len(coeffs) < M:
        raise LengthError(f"need {M} coefficients, got {len(coeffs)}")
    S = []
    for n in range(1, M + 1):
        s = -n * coeffs[n - 1]
        for i in range(1, n):
            s -= coeffs[i - 1] * S[n - i - 1]
        S.append(s)
    return S


def coefficients(family: str, nu, count: int) -> list:
    """Taylor coefficients a_1..a_count in z = x^2 (eta, sigma) or z = x^4 (zeta)."""
    if family not in FAMILIES:
        raise DomainError(f"unknown family {family!r}")
    one = nu - nu + 1
    out = []
    for n in range(1, count + 1):
        den = math.factorial(n) * pochhammer(nu + 1, n)
        if family == "zeta":
            num = one * (-1) ** n
            den = den * 16 ** n * pochhammer(nu + 2, 2 * n)
        else:
            num = one * (-1) ** n * (2 * n + 1 if family == "eta" else 1)
            den = den * 4 ** n
        out.append(num / den)
    return out


def closed_form(family: str, nu, m: int):
    if family == "eta" and m == 1:
        return 3 / (4 * (nu + 1))
    if family == "sigma" and m == 1:
        return 1 / (4 * (nu + 1))
    if family == "zeta" and m == 1:
        return 1 / (16 * pochhammer(nu + 1, 3))
    if family == "zeta" and m == 2:
        return (5 * nu + 17) / (256 * pochhammer(nu + 1, 3) * pochhammer(nu + 1, 5))
    raise DomainError(f"no closed form for {family} of order {m}")


@lru_cache(maxsize=256)
def _recursion(family: str, nu: float, M: int) -> tuple:
    return tuple(euler_rayleigh(coefficients(family, nu, M), M))


def recursion_values(family: str, nu: float, M: int) -> list[float]:
    """R_1..R_M by the Euler-Rayleigh recursion (M <= 12)."""
    nu = check_order(nu)
    if family not in FAMILIES:
        raise DomainError(f"unknown family {family!r}")
    if not 1 <= M <= MAX_DEPTH:
        raise DomainError(f"recursion depth must be in 1..{MAX_DEPTH}")
    return list(_recursion(family, nu, M))


def rayleigh(family: str, nu: float, m: int, method: str = "recursion",
             count: int = DIRECT_COUNT) -> RayleighValue:
    nu = check_order(nu)
    if family not in FAMILIES:
        raise DomainError(f"unknown family {family!r}")
    if m < 1:
        raise DomainError("order m must be at least 1")
    if method == "closed":
        return RayleighValue(family, nu, m, float(closed_form(family, nu, m)), method)
    if method == "recursion":
        return RayleighValue(family, nu, m, recursion_values(family, nu, m)[m - 1], method)
    if method == "direct":
        p = _POWER[family] * m
        table = zero_finder.zeros(_KIND[family], nu, count)
        z = table.zeros
        value = math.fsum((z ** -p).tolist())
        # omitted tail plus the effect of relative zero errors up to tol
        err = zero_finder.power_tail_bound(z[-1], p) + p * table.tol * value
        return RayleighValue(family, nu, m, value, method, err)
    raise DomainError(f"unknown method {method!r}")


def eta(nu: float, m: int, method: str = "recursion") -> RayleighValue:
    return rayleigh("eta", nu, m, method)


def zeta(nu: float, m: int, method: str = "recursion") -> RayleighValue:
    return rayleigh("zeta", nu, m, method)


def sigma(nu: float, m: int, method: str = "recursion") -> RayleighValue:
    return rayleigh("sigma", nu, m, method)


_TARGET = {"alpha1": "eta", "gamma1": "zeta", "j1": "sigma"}


def smallest_zero_bounds(target: str, nu: float, m: int) -> tuple[float, float]:
    """Euler-Rayleigh bracket R_m^{-1/m} < z^p < R_m / R_{m+1} for the smallest zero z.

    p = 2 for alpha1 and j1 (bounds on the square), p = 4 for gamma1.
    """
    if target not in _TARGET:
        raise DomainError(f"unknown target {target!r}")
    R = recursion_values(_TARGET[target], nu, m + 1)
    return R[m - 1] ** (-1.0 / m), R[m - 1] / R[m]


def sequence_A(nu: float, n: int) -> list[float]:
    """A_k = alpha_1^2 eta_{2k+2} - eta_{2k}, k = 1..n."""
    a2 = zero_finder.dini_zeros(nu, 1)[1] ** 2
    eta = recursion_values("eta", nu, n + 1)
    return [a2 * eta[k] - eta[k - 1] for k in range(1, n + 1)]


def sequence_B(nu: float, n: int) -> list[float]:
    """B_k = gamma_1^4 zeta_{4k+4} - zeta_{4k}, k = 1..n."""
    g4 = zero_finder.cross_zeros(nu, 1)[1] ** 4
    zeta = recursion_values("zeta", nu, n + 1)
    return [g4 * zeta[k] - zeta[k - 1] for k in range(1, n + 1)]
