"""Grids, finite differences and small numeric helpers shared by the claim checkers."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .. import zero_finder
from ..errors import HypothesisError
from ..special_core import check_order, evaluate, log_normalized, pochhammer

DEFAULT_NUS = (-0.9, -0.5, 0.0, 0.5, 1.0, 2.0, 5.0)
DEFAULT_FRACTIONS = tuple(round(0.05 * i, 2) for i in range(1, 20))
FD_ORDERS = 6
FD_SLACK = 1e-9
NU7D = (1 + math.sqrt(57)) / 2


@dataclass(frozen=True)
class GridSpec:
    """nu_values=None means the default grid cut to the claim's window."""

    nu_values: tuple | None = None
    x_fractions: tuple = DEFAULT_FRACTIONS
    n_max: int = 6
    extra: dict = field(default_factory=dict)

    def refined(self) -> "GridSpec":
        """Same endpoints, midpoints inserted between consecutive fractions."""
        f = sorted(self.x_fractions)
        mids = [(a + b) / 2 for a, b in zip(f, f[1:])]
        return GridSpec(self.nu_values, tuple(sorted(f + mids)), self.n_max, self.extra)


def nus_for(grid: GridSpec, window, label: str):
    """Grid orders inside `window` (a predicate); user-given orders must all satisfy it."""
    if grid.nu_values is None:
        return [nu for nu in DEFAULT_NUS if window(nu)]
    for nu in grid.nu_values:
        check_order(nu)
    bad = [nu for nu in grid.nu_values if not window(nu)]
    if bad:
        raise HypothesisError(f"{label}: order(s) {bad} outside the hypothesis window")
    return [float(nu) for nu in grid.nu_values]


def alpha1(nu):
    return zero_finder.dini_zeros(nu, 1)[1]


def gamma1(nu):
    return zero_finder.cross_zeros(nu, 1)[1]


def j1(nu):
    return zero_finder.bessel_j_zeros(nu, 1)[1]


def poch3(nu):
    return pochhammer(nu + 1, 3)


def val(tag, nu, x, k=0):
    return evaluate(tag, nu, x, k).value


def logn(tag, nu, x):
    return log_normalized(tag, nu, x)


def forward_differences(values, k):
    """k-th forward differences of a sampled sequence, with the stencil scale sum |C(k,j) f_j|."""
    out = []
    for i in range(len(values) - k):
        terms = [(-1) ** (k - j) * math.comb(k, j) * values[i + j] for j in range(k + 1)]
        out.append((math.fsum(terms), math.fsum(abs(t) for t in terms)))
    return out


def check_abs_monotone(chk, label, values, params, orders=range(0, FD_ORDERS + 1)):
    """Differences of orders in `orders` must be >= -FD_SLACK relative to the stencil scale."""
    for k in orders:
        for i, (d, scale) in enumerate(forward_differences(values, k)):
            chk.at_least({**params, "fn": label, "order": k, "i": i}, d / max(scale, 1e-300), FD_SLACK)


def richardson_limit0(fun, x0, levels=4):
    """Limit of fun(x) as x -> 0+ for fun smooth in x^2, by Richardson extrapolation."""
    xs = [x0 / 2 ** i for i in range(levels)]
    table = [fun(x) for x in xs]
    for j in range(1, levels):
        factor = 4 ** j
        table = [(factor * table[i + 1] - table[i]) / (factor - 1) for i in range(len(table) - 1)]
    return table[0]
