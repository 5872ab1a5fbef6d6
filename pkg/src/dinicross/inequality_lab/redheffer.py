"""Redheffer-type bounds for calD, calW, lambda and calJ.

Every inequality is compared in logarithmic form, log(lhs) vs log(rhs),
with logs of the normalized functions taken from the log1p of their series
so that margins stay meaningful near x = 0 where both sides tend to 1.
"""

from __future__ import annotations

import math

import numpy as np

from .. import zero_finder
from ..errors import HypothesisError
from ..report import Checker
from ._common import NU7D, DEFAULT_NUS, GridSpec, alpha1, gamma1, j1, logn, nus_for, poch3, richardson_limit0

HYP_N = 50
SHARP_TOL = 1e-3


def _nonstrict_log(chk, params, small, big):
    """small <= big, both given as logs."""
    chk.nonstrict(params, big - small, max(abs(small), abs(big), 1e-300))


def _signed(fracs):
    return [s * f for f in fracs for s in (1.0, -1.0)]


def _radius_7a(nu):
    a = zero_finder.dini_zeros(nu, HYP_N + 1).zeros
    psi = a[1:] ** 2 - a[0] * a[:-1] - a[:-1] * a[1:]
    return psi, min(a[0], math.sqrt(psi.min())) if psi.min() >= 0 else None


def _radius_7c(nu):
    g = zero_finder.cross_zeros(nu, HYP_N + 1).zeros
    omega = g[1:] ** 4 - g[0] ** 2 * g[:-1] ** 2 - g[:-1] ** 2 * g[1:] ** 2
    return omega, min(g[0], omega.min() ** 0.25) if omega.min() >= 0 else None


def _hyp_orders(grid, radius, claim):
    """Orders whose zero-gap hypothesis holds for n <= HYP_N, and notes on the rest."""
    skipped = []
    keep = []
    candidates = DEFAULT_NUS if grid.nu_values is None else grid.nu_values
    for nu in candidates:
        values, rad = radius(float(nu))
        if rad is None:
            n_bad = int(np.argmax(values < 0)) + 1
            if grid.nu_values is not None:
                raise HypothesisError(f"{claim}: zero-gap hypothesis fails at nu={nu}, n={n_bad}")
            skipped.append(f"nu={nu:g} (fails at n={n_bad})")
        else:
            keep.append((float(nu), rad))
    return keep, skipped


def verify_thm7a(grid: GridSpec):
    chk = Checker("thm7a")
    keep, skipped = _hyp_orders(grid, _radius_7a, "thm7a")
    for nu, delta in keep:
        a2 = alpha1(nu) ** 2
        for x in _signed(grid.x_fractions):
            x *= delta
            _nonstrict_log(chk, {"nu": nu, "x": x}, math.log((a2 - x * x) / (a2 + x * x)), logn("calD", nu, x))
    note = f"hypothesis checked for n <= {HYP_N}; radius min(alpha_1, sqrt(Psi))"
    if skipped:
        note += "; hypothesis fails, order skipped: " + ", ".join(skipped)
    return chk.report(note)


def verify_thm7c(grid: GridSpec):
    chk = Checker("thm7c")
    keep, skipped = _hyp_orders(grid, _radius_7c, "thm7c")
    for nu, eps in keep:
        g4 = gamma1(nu) ** 4
        for x in _signed(grid.x_fractions):
            x *= eps
            x4 = x ** 4
            _nonstrict_log(chk, {"nu": nu, "x": x}, math.log((g4 - x4) / (g4 + x4)), logn("calW", nu, x))
    note = (f"hypothesis checked for n <= {HYP_N}; radius min(gamma_1, Omega^(1/4)), the scaling "
            "under which Omega(n) - gamma_1^4 x^4 >= 0 drives the induction")
    if skipped:
        note += "; hypothesis fails, order skipped: " + ", ".join(skipped)
    return chk.report(note)


def _power_bound(chk, claim_tag, nu, tag, first, power, expo, fracs):
    """log f <= expo * log((z^p - x^p)/(z^p + x^p)) on (-z, z), and the limit ratio at z/100."""
    zp = first ** power
    for x in _signed(fracs):
        x *= first
        xp = abs(x) ** power
        _nonstrict_log(chk, {"nu": nu, "x": x}, logn(tag, nu, x), expo * math.log((zp - xp) / (zp + xp)))
    x = first / 100
    xp = x ** power
    ratio = logn(tag, nu, x) / math.log((zp - xp) / (zp + xp))
    chk.at_least({"nu": nu, "check": f"{claim_tag} exponent sharp at z/100", "ratio": ratio,
                  "exponent": expo}, SHARP_TOL - abs(ratio - expo), 0.0)


def verify_thm7b(grid: GridSpec):
    chk = Checker("thm7b")
    for nu in nus_for(grid, lambda v: -1 < v < 8, "thm7b"):
        a = alpha1(nu)
        _power_bound(chk, "m_nu", nu, "calD", a, 2, 3 * a * a / (8 * (nu + 1)), grid.x_fractions)
    return chk.report("order window (-1, 8)")


def verify_thm7d(grid: GridSpec):
    chk = Checker("thm7d")
    for nu in nus_for(grid, lambda v: -1 < v < NU7D, "thm7d"):
        g = gamma1(nu)
        _power_bound(chk, "n_nu", nu, "calW", g, 4, g ** 4 / (32 * poch3(nu)), grid.x_fractions)
    return chk.report(f"order window (-1, {NU7D:.6f})")


def _q8(nu, r, x):
    return logn("lambda", nu, x) / math.log((r * r + x * x) / (r * r - x * x))


def verify_thm8(grid: GridSpec, radii=(1.0, 0.5, 2.0)):
    """radii are multiples of alpha_{nu,1}."""
    chk = Checker("thm8")
    printed_fail = []
    worst_limit = 0.0
    for nu in nus_for(grid, lambda v: v > -1, "thm8"):
        a = alpha1(nu)
        for rm in radii:
            r = rm * a
            beta = 3 * r * r / (8 * (nu + 1))
            printed = 3 * a * a / (8 * (nu + 1))
            qs = []
            for f in grid.x_fractions:
                x = f * r
                ll = logn("lambda", nu, x)
                lp = math.log((r * r + x * x) / (r * r - x * x))
                p = {"nu": nu, "r": r, "x": x}
                _nonstrict_log(chk, {**p, "side": "lower alpha=0"}, 0.0, ll)
                _nonstrict_log(chk, {**p, "side": "upper beta"}, ll, beta * lp)
                if printed * lp < ll:
                    printed_fail.append(f"nu={nu:g} r={rm:g}alpha_1 x={x:.3g}")
                qs.append(ll / lp)
            for i in range(len(qs) - 1):
                chk.nonstrict({"nu": nu, "r": r, "i": i, "check": "Q decreasing"}, qs[i] - qs[i + 1], qs[i])
            # beta is the limit of Q at 0 and the bound is sharp there
            lim = richardson_limit0(lambda x: _q8(nu, r, x), r / 20)
            worst_limit = max(worst_limit, abs(lim - beta) / beta)
            chk.at_least({"nu": nu, "r": r, "check": "beta equals lim Q(0+)"}, 1e-6 - abs(lim - beta) / beta, 0.0)
            x = r / 100
            lp = math.log((r * r + x * x) / (r * r - x * x))
            chk.strict({"nu": nu, "r": r, "check": "smaller beta fails near 0"},
                       logn("lambda", nu, x) - beta * (1 - SHARP_TOL) * lp, abs(beta * lp))
    note = ("upper exponent threshold is lim Q(0+) = 3 r^2/(8(nu+1)), equal to 3 alpha_1^2/(8(nu+1)) "
            f"only at r = alpha_1; relative gap of the extrapolated limit {worst_limit:.1e}; "
            "alpha <= 0 is necessary since Q -> 0 as x -> r (not sampled)")
    if printed_fail:
        note += (f"; with exponent 3 alpha_1^2/(8(nu+1)) for r != alpha_1 the upper bound fails at "
                 f"{len(printed_fail)} points, first {printed_fail[0]}")
    return chk.report(note)


def verify_lemma2(grid: GridSpec):
    chk = Checker("lemma2")
    v0 = zero_finder.nu0()
    chk.strict({"check": "nu0 > 1"}, v0 - 1)
    chk.strict({"check": "nu0 < 2"}, 2 - v0)
    nus = sorted(set(nus_for(grid, lambda v: v > -1, "lemma2")) | set(np.round(np.linspace(-0.95, 8, 180), 6)))
    signs = []
    for nu in nus:
        g = j1(nu) ** 2 - 8 * (nu + 1)
        s = 1.0 if nu >= v0 else -1.0
        chk.nonstrict({"nu": nu}, s * g, 8 * (nu + 1))
        signs.append(np.sign(g))
    changes = int(np.count_nonzero(np.diff(signs) != 0))
    if changes != 1:
        chk.fail({"check": "single sign change", "changes": changes})
    return chk.report(f"nu0 = {v0:.16g}; sign changes of j_1^2 - 8(nu+1) on the sample: {changes}")


def _bessel_pair(chk, nu, expo_j, expo_ratio, fracs, sharp):
    j = j1(nu)
    j2 = j * j
    for x in _signed(fracs):
        x *= j
        lr = math.log((j2 - x * x) / (j2 + x * x))
        lj = logn("calJ", nu, x)
        _nonstrict_log(chk, {"nu": nu, "x": x, "side": "calJ"}, lj, expo_j * lr)
        _nonstrict_log(chk, {"nu": nu, "x": x, "side": "ratio"}, -expo_ratio * lr, logn("calJ", nu + 1, x) - lj)
    if sharp:
        x = j / 100
        lr = math.log((j2 - x * x) / (j2 + x * x))
        lj = logn("calJ", nu, x)
        for side, got, want in (("calJ", lj / lr, expo_j),
                                ("ratio", -(logn("calJ", nu + 1, x) - lj) / lr, expo_ratio)):
            chk.at_least({"nu": nu, "check": f"{side} exponent sharp at j/100"}, SHARP_TOL - abs(got - want), 0.0)


def verify_redheffer56(grid: GridSpec):
    chk = Checker("redheffer56")
    v0 = zero_finder.nu0()
    for nu in nus_for(grid, lambda v: -1 < v <= v0, "redheffer56"):
        j2 = j1(nu) ** 2
        _bessel_pair(chk, nu, j2 / (8 * (nu + 1)), j2 / (8 * (nu + 1) * (nu + 2)), grid.x_fractions, True)
    return chk.report(f"order window (-1, {v0:.6f}]")


def verify_thm9(grid: GridSpec):
    chk = Checker("thm9")
    v0 = zero_finder.nu0()
    for nu in nus_for(grid, lambda v: v >= v0, "thm9"):
        _bessel_pair(chk, nu, 1.0, 1 / (nu + 2), grid.x_fractions, False)
    return chk.report(f"order window [{v0:.6f}, inf)")


__all__ = ["verify_thm7a", "verify_thm7b", "verify_thm7c", "verify_thm7d", "verify_thm8",
           "verify_lemma2", "verify_redheffer56", "verify_thm9"]
