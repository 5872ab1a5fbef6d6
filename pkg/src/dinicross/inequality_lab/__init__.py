"""Numerical verification of the claims about calW, calD, lambda and calJ.

Every claim is a function GridSpec -> VerificationReport registered under its
tag in CLAIMS.  `verify` builds the grid from plain arguments, `run_suite`
runs a set of claims (optionally on a thread pool) and returns the reports
sorted by tag.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

from ..errors import DomainError
from ..report import VerificationReport
from . import identities, interlacing, logderiv, redheffer, shape
from ._common import DEFAULT_FRACTIONS, DEFAULT_NUS, GridSpec


@dataclass(frozen=True)
class Claim:
    tag: str
    run: Callable
    summary: str
    count_means: str = "number of zero intervals sampled"


def _with_count(fn, key):
    def run(grid, count=None):
        return fn(grid) if count is None else fn(grid, **{key: count})
    return run


def _n_max(fn):
    def run(grid, count=None):
        if count is not None:
            grid = GridSpec(grid.nu_values, grid.x_fractions, count)
        return fn(grid)
    return run


def _calogero(which):
    def run(grid, count=None):
        return identities.verify_calogero(which, grid, count=count or identities.CALOGERO_N)
    return run


def _order(fn):
    def run(grid, count=None):
        return fn(grid) if count is None else fn(grid, orders=(count,))
    return run


_CLAIMS = [
    Claim("thm1a", _n_max(shape.verify_thm1a), "sign pattern of calW"),
    Claim("thm1b", _n_max(shape.verify_thm1b), "calW increases then decreases around 0"),
    Claim("thm1c", _n_max(shape.verify_thm1c), "log- and geometric concavity of calW"),
    Claim("thm1d", _n_max(shape.verify_thm1d), "log-concavity of W for nu >= -1/2"),
    Claim("thm1e", _n_max(shape.verify_thm1e), "calW and x calW'/calW increase with nu"),
    Claim("thm1f", _n_max(shape.verify_thm1f), "absolute monotonicity in t = x^4", "unused"),
    Claim("thm2", _with_count(interlacing.verify_thm2, "count"), "alpha/j/gamma interlacing chain",
          "chain length n"),
    Claim("cor21", _n_max(interlacing.verify_cor21), "sandwiches for calW and I/J", "unused"),
    Claim("thm3", _n_max(interlacing.verify_thm3), "derivative zeros interlace"),
    Claim("thm4_id1", _calogero("id1"), "sum 1/(alpha_n^2 - alpha_k^2)", "zeros in the sums"),
    Claim("thm4_id2", _calogero("id2"), "sum 1/(alpha_n^4 - alpha_k^4)", "zeros in the sums"),
    Claim("thm4_id3", _calogero("id3"), "sum 1/(gamma_n^4 - gamma_k^4)", "zeros in the sums"),
    Claim("thm5", _n_max(shape.verify_thm5), "-x calW'/calW absolutely monotone", "unused"),
    Claim("thm6", _n_max(shape.verify_thm6), "f, g, h, q absolutely monotone", "unused"),
    Claim("cor61", _n_max(shape.verify_cor61), "upper bound for W", "unused"),
    Claim("thm7a", _n_max(redheffer.verify_thm7a), "lower Redheffer bound for calD", "unused"),
    Claim("thm7b", _n_max(redheffer.verify_thm7b), "upper Redheffer bound for calD", "unused"),
    Claim("thm7c", _n_max(redheffer.verify_thm7c), "lower Redheffer bound for calW", "unused"),
    Claim("thm7d", _n_max(redheffer.verify_thm7d), "upper Redheffer bound for calW", "unused"),
    Claim("thm8", _n_max(redheffer.verify_thm8), "Redheffer bounds for lambda", "unused"),
    Claim("lemma2", _n_max(redheffer.verify_lemma2), "sign of j_1^2 - 8(nu+1)", "unused"),
    Claim("redheffer56", _n_max(redheffer.verify_redheffer56), "Redheffer bounds for calJ, nu <= nu0", "unused"),
    Claim("thm9", _n_max(redheffer.verify_thm9), "Redheffer bounds for calJ, nu >= nu0", "unused"),
    Claim("thm10", _order(logderiv.verify_thm10), "bounds for calD'/calD", "order n (1..4)"),
    Claim("thm11", _order(logderiv.verify_thm11), "bounds for calW'/calW", "order n (1..4)"),
    Claim("dini_ode", _n_max(identities.verify_dini_ode), "ODE satisfied by d_nu", "unused"),
    Claim("limit_eq", _with_count(identities.verify_limit_eq, "ks"), "d''/d' at the zeros of d_nu",
          "zeros checked k"),
    Claim("wprime_product", _with_count(identities.verify_wprime_product, "count"), "product over zeros of W'",
          "zeros in the product"),
]

CLAIMS = {c.tag: c for c in _CLAIMS}
CLAIM_IDS = tuple(sorted(CLAIMS))


def _sorted(report: VerificationReport) -> VerificationReport:
    report.violations.sort(key=lambda v: json.dumps(v[0], sort_keys=True))
    return report


def make_grid(nu=None, nu_grid=None, fractions=None, n_max: int = 6) -> GridSpec:
    if nu is not None and nu_grid is not None:
        raise DomainError("give either nu or nu_grid, not both")
    nus = (float(nu),) if nu is not None else (tuple(float(v) for v in nu_grid) if nu_grid is not None else None)
    fr = tuple(float(f) for f in fractions) if fractions is not None else DEFAULT_FRACTIONS
    if not fr or any(not 0 < f < 1 for f in fr):
        raise DomainError("grid fractions must lie in (0, 1)")
    if n_max < 1:
        raise DomainError("n_max must be at least 1")
    return GridSpec(nus, fr, n_max)


def verify(claim: str, nu=None, nu_grid=None, fractions=None, count: int | None = None) -> VerificationReport:
    """Run one claim on the default grid or on the given orders and fractions."""
    if claim not in CLAIMS:
        raise DomainError(f"unknown claim {claim!r}")
    if count is not None and count < 1:
        raise DomainError("count must be at least 1")
    grid = make_grid(nu, nu_grid, fractions)
    return _sorted(CLAIMS[claim].run(grid, count))


def run_suite(claims=None, workers: int = 1) -> list[VerificationReport]:
    """All (or the given) claims on their default grids, sorted by tag."""
    tags = sorted(claims or CLAIM_IDS)
    for t in tags:
        if t not in CLAIMS:
            raise DomainError(f"unknown claim {t!r}")
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            reports = list(pool.map(verify, tags))
    else:
        reports = [verify(t) for t in tags]
    return sorted(reports, key=lambda r: r.claim)


# named operations -----------------------------------------------------------

def verify_theorem1(nu=None, grid: GridSpec | None = None) -> VerificationReport:
    grid = grid or make_grid(nu)
    parts = [CLAIMS[f"thm1{p}"].run(grid) for p in "abcef"]
    # log-concavity of W only holds for nu >= -1/2; run it on that part of the grid
    if grid.nu_values is None:
        parts.append(CLAIMS["thm1d"].run(grid))
    else:
        ok = tuple(v for v in grid.nu_values if v >= -0.5)
        if ok:
            parts.append(CLAIMS["thm1d"].run(GridSpec(ok, grid.x_fractions, grid.n_max, grid.extra)))
    return _sorted(VerificationReport.merge("thm1", parts))


def verify_corollary21(nu=None, grid: GridSpec | None = None) -> VerificationReport:
    return _sorted(interlacing.verify_cor21(grid or make_grid(nu)))


def verify_calogero(nu: float, k: int, N: int = identities.CALOGERO_N) -> VerificationReport:
    grid = make_grid(nu)
    parts = [identities.verify_calogero(w, grid, ks=(k,), count=N) for w in ("id1", "id2", "id3")]
    return _sorted(VerificationReport.merge("thm4", parts))


def verify_ode_and_limit(nu=None, grid: GridSpec | None = None) -> VerificationReport:
    grid = grid or make_grid(nu)
    parts = [identities.verify_dini_ode(grid), identities.verify_limit_eq(grid)]
    return _sorted(VerificationReport.merge("dini_ode+limit_eq", parts))


_REDHEFFER = ("thm7a", "thm7b", "thm7c", "thm7d", "thm8", "redheffer56", "thm9")


def verify_redheffer(claim: str, nu=None, grid: GridSpec | None = None) -> VerificationReport:
    if claim not in _REDHEFFER:
        raise DomainError(f"{claim!r} is not a Redheffer-type claim")
    return _sorted(CLAIMS[claim].run(grid or make_grid(nu)))


def verify_logderiv_bounds(claim: str, nu=None, n: int = 1, grid: GridSpec | None = None) -> VerificationReport:
    if claim not in ("thm10", "thm11"):
        raise DomainError(f"{claim!r} is not a log-derivative claim")
    return _sorted(CLAIMS[claim].run(grid or make_grid(nu), n))


def verify_abs_monotone(claim: str, nu=None, grid: GridSpec | None = None, mu=None) -> VerificationReport:
    grid = grid or make_grid(nu)
    if claim == "thm6" and mu is not None:
        nus = grid.nu_values or DEFAULT_NUS
        return _sorted(shape.verify_thm6(grid, pairs=[(float(mu), float(v)) for v in nus]))
    if claim not in ("thm5", "thm6", "cor61"):
        raise DomainError(f"{claim!r} is not an absolute-monotonicity claim")
    return _sorted(CLAIMS[claim].run(grid))


__all__ = ["CLAIMS", "CLAIM_IDS", "GridSpec", "make_grid", "verify", "run_suite", "verify_theorem1",
           "verify_corollary21", "verify_calogero", "verify_ode_and_limit", "verify_redheffer",
           "verify_logderiv_bounds", "verify_abs_monotone"]
