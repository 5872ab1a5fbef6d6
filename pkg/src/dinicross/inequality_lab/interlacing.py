"""Interlacing of zero sets and the sandwich bounds that follow from it."""

from __future__ import annotations

import math

import numpy as np

from .. import zero_finder
from ..report import Checker, VerificationReport
from ._common import GridSpec, alpha1, j1, logn, nus_for, val

RESCAN_SAMPLES = 256


def verify_thm2(grid: GridSpec, count: int | None = None) -> VerificationReport:
    count = count or max(grid.n_max, 8)
    reports = [zero_finder.interlacing_chain(nu, count) for nu in nus_for(grid, lambda v: v > -1, "thm2")]
    merged = VerificationReport.merge("thm2", reports)
    merged.notes = (f"alpha_n < j_n < gamma_n < alpha_n+1 < j_n+1 for n <= {count}; "
                    f"smallest gap {merged.min_margin:.3g}")
    return merged


def _strict_log(chk, params, small, big):
    chk.strict(params, big - small, max(abs(small), abs(big), 1e-300))


def verify_cor21(grid: GridSpec) -> VerificationReport:
    chk = Checker("cor21")
    reversed_fail = 0
    negatives = 0
    for nu in nus_for(grid, lambda v: v > -1, "cor21"):
        a = alpha1(nu)
        j = j1(nu)
        for f in grid.x_fractions:
            for s in (1.0, -1.0):
                # first sandwich on |x| < alpha_1
                x = s * f * a
                dl = logn("calD", nu, x) + logn("lambda", nu, x)
                jl = logn("calJ", nu, x) + logn("calI", nu, x)
                w = logn("calW", nu, x)
                fa = math.log(a ** 4 / (a ** 4 - x ** 4))
                fj = math.log(j ** 4 / (j ** 4 - x ** 4))
                p = {"nu": nu, "x": x}
                _strict_log(chk, {**p, "ine": 1, "side": "lower"}, dl, w)
                _strict_log(chk, {**p, "ine": 1, "side": "upper"}, w, fa + dl)
                # the second lower bound is the better one, the first upper bound is the better one
                chk.nonstrict({**p, "check": "lower of 2 >= lower of 1"}, jl - dl, max(abs(jl), abs(dl), 1e-300))
                chk.nonstrict({**p, "check": "upper of 1 <= upper of 2"}, (fj + jl) - (fa + dl),
                              max(abs(fj + jl), abs(fa + dl), 1e-300))
                # second and third sandwiches on |x| < j_1
                x = s * f * j
                p = {"nu": nu, "x": x}
                jl = logn("calJ", nu, x) + logn("calI", nu, x)
                w = logn("calW", nu, x)
                _strict_log(chk, {**p, "ine": 2, "side": "lower"}, jl, w)
                _strict_log(chk, {**p, "ine": 2, "side": "upper"}, w, math.log(j ** 4 / (j ** 4 - x ** 4)) + jl)
                # I/J through the normalized ratio, which is even in x
                lr = logn("calI", nu, x) - logn("calJ", nu, x)
                lo = x * x / (2 * (nu + 1))
                hi = j * j / (4 * (nu + 1)) * math.log((j * j + x * x) / (j * j - x * x))
                _strict_log(chk, {**p, "ine": 3, "side": "lower"}, lo, lr)
                _strict_log(chk, {**p, "ine": 3, "side": "upper"}, lr, hi)
                if s < 0:
                    negatives += 1
                    if not (lr < lo and lr > hi):
                        reversed_fail += 1
    return chk.report(f"all three sandwiches checked for both signs of x; the third in its stated direction "
                      f"also for x < 0, because I_nu/J_nu (through the normalized ratio) is even in x; "
                      f"the reversed direction fails at {reversed_fail} of {negatives} negative points")


def _one_per_bracket(chk, table, brackets, label, nu):
    counts = zero_finder.rescan(table, brackets, RESCAN_SAMPLES)
    for n, ((lo, hi), c) in enumerate(zip(brackets, counts), 1):
        p = {"nu": nu, "family": label, "bracket": n}
        if c != 1:
            chk.fail({**p, "sign_changes": c})
            continue
        z = table[n]
        chk.strict(p, min(z - lo, hi - z), hi - lo)


def _none_below(chk, tag, nu, first, label):
    """The derivative keeps one sign on (0, first zero): sampled from the series evaluator."""
    xs = first * np.linspace(0, 1, RESCAN_SAMPLES + 1)[1:-1]
    d = np.array([val(tag, nu, x, 1) for x in xs])
    changes = int(np.count_nonzero(np.sign(d[:-1]) * np.sign(d[1:]) < 0))
    if changes:
        chk.fail({"nu": nu, "family": label, "interval": "below first zero", "sign_changes": changes})
    else:
        chk.strict({"nu": nu, "family": label, "interval": "below first zero"}, 1.0)


def verify_thm3(grid: GridSpec) -> VerificationReport:
    chk = Checker("thm3")
    n = grid.n_max
    skipped = []
    for nu in nus_for(grid, lambda v: v > -1, "thm3"):
        a = zero_finder.dini_zeros(nu, n + 1).zeros
        g = zero_finder.cross_zeros(nu, n + 1).zeros
        t = zero_finder.derivative_zeros("calD_prime", nu, n)
        _one_per_bracket(chk, t, [(a[i], a[i + 1]) for i in range(n)], "calD'", nu)
        _none_below(chk, "calD", nu, a[0], "calD'")
        t = zero_finder.derivative_zeros("calW_prime", nu, n)
        _one_per_bracket(chk, t, [(g[i], g[i + 1]) for i in range(n)], "calW'", nu)
        _none_below(chk, "calW", nu, g[0], "calW'")
        if nu > 0:
            t = zero_finder.derivative_zeros("dini_prime", nu, n)
            lows = [1e-6 * a[0]] + list(a[: n - 1])
            _one_per_bracket(chk, t, list(zip(lows, a[:n])), "d'", nu)
        else:
            skipped.append(f"{nu:g}")
    note = f"one sign change per bracket at {RESCAN_SAMPLES} samples, first {n} brackets"
    if skipped:
        note += "; part c (nu > 0 only) skipped at nu = " + ", ".join(skipped)
    return chk.report(note)
