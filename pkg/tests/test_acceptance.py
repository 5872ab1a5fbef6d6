"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run alone with `pytest tests/test_acceptance.py -s` to see the lines inline;
they are also collected into the terminal summary of any run.
"""

import csv
import io
import math
import time

from conftest import ACCEPTANCE_LINES
from dinicross import cli, cross_w, inequality_lab as lab, pochhammer, rayleigh as ry, zero_finder as zf
from dinicross.inequality_lab import identities, shape
from dinicross.special_core import log_normalized

TIME_LIMIT = 60.0


class Gate:
    """Collects failures for one criterion and records a single summary line."""

    def __init__(self, number, title):
        self.number = number
        self.title = title
        self.failures = []
        self.facts = []
        self.t0 = time.perf_counter()

    def check(self, ok, what):
        if not ok:
            self.failures.append(what)

    def fact(self, text):
        self.facts.append(text)

    def finish(self):
        elapsed = time.perf_counter() - self.t0
        self.check(elapsed < TIME_LIMIT, f"took {elapsed:.1f} s")
        status = "PASS" if not self.failures else "FAIL"
        detail = "; ".join(self.facts + self.failures[:3])
        line = f"[{status}] criterion {self.number:>2}: {self.title} ({elapsed:.1f} s) {detail}"
        ACCEPTANCE_LINES[self.number] = line
        print(line)
        assert not self.failures, line


def test_c01_closed_form_rayleigh_values():
    gate = Gate(1, "closed-form eta_2, zeta_4, zeta_8 from the recursion to 1e-13")
    worst = 0.0
    for nu in (-0.9, -0.5, 0.0, 1.0, 5.0):
        want = {
            ("eta", 1): 3 / (4 * (nu + 1)),
            ("zeta", 1): 1 / (16 * pochhammer(nu + 1, 3)),
            ("zeta", 2): (5 * nu + 17) / (256 * pochhammer(nu + 1, 3) * pochhammer(nu + 1, 5)),
        }
        for (fam, m), w in want.items():
            got = ry.rayleigh(fam, nu, m, "recursion").value
            rel = abs(got - w) / w
            worst = max(worst, rel)
            gate.check(rel <= 1e-13, f"{fam}{m} nu={nu} rel {rel:.1e}")
    gate.fact(f"worst rel {worst:.1e}")
    gate.finish()


def test_c02_recursion_vs_direct_sums():
    gate = Gate(2, "recursion vs 2000-zero direct sums, m <= 3")
    worst = {1: 0.0, 2: 0.0}
    for nu in (-0.9, -0.5, 0.0, 1.0, 5.0):
        for fam in ry.FAMILIES:
            for m in (1, 2, 3):
                r = ry.rayleigh(fam, nu, m, "recursion").value
                d = ry.rayleigh(fam, nu, m, "direct")
                cap = 1e-4 if m == 1 else 1e-8
                key = min(m, 2)
                worst[key] = max(worst[key], d.tail_err)
                gate.check(abs(r - d.value) <= d.tail_err, f"{fam}{m} nu={nu} outside tail bound")
                gate.check(d.tail_err <= cap, f"{fam}{m} nu={nu} tail {d.tail_err:.1e} > {cap:g}")
    gate.fact(f"largest tail bound m=1 {worst[1]:.1e}, m>=2 {worst[2]:.1e}")
    gate.finish()


def test_c03_interlacing_chain():
    gate = Gate(3, "alpha < j < gamma < alpha' < j' for n <= 8, gaps > 1e-6")
    smallest = math.inf
    for nu in (-0.5, 0.0, 1.0, 2.0, 5.0):
        a = zf.dini_zeros(nu, 9).zeros
        j = zf.bessel_j_zeros(nu, 9).zeros
        g = zf.cross_zeros(nu, 8).zeros
        for n in range(8):
            chain = (a[n], j[n], g[n], a[n + 1], j[n + 1])
            for lo, hi in zip(chain, chain[1:]):
                smallest = min(smallest, hi - lo)
                gate.check(hi - lo > 1e-6, f"nu={nu} n={n + 1} gap {hi - lo:.1e}")
        gate.check(zf.interlacing_chain(nu, 8).passed, f"interlacing_chain nu={nu}")
    gate.fact(f"smallest gap {smallest:.3g}")
    gate.finish()


def test_c04_smallest_zero_bounds():
    gate = Gate(4, "gamma_1^4 strictly inside the closed-form Euler-Rayleigh interval")
    for nu in (-0.9, -0.5, 0.0, 0.5, 1.0, 2.0, 5.0):
        lo = 16 * pochhammer(nu + 1, 3) * math.sqrt((nu + 4) * (nu + 5)) / math.sqrt(5 * nu + 17)
        hi = 16 * pochhammer(nu + 1, 5) / (5 * nu + 17)
        g4 = zf.cross_zeros(nu, 1)[1] ** 4
        gate.check(lo < g4 < hi, f"nu={nu}: {g4} not in ({lo}, {hi})")
        # the same ends from the recursion route: zeta_8^{-1/2} and zeta_4/zeta_8
        rlo = ry.smallest_zero_bounds("gamma1", nu, 2)[0]
        rhi = ry.smallest_zero_bounds("gamma1", nu, 1)[1]
        gate.check(abs(rlo - lo) <= 1e-12 * lo and abs(rhi - hi) <= 1e-12 * hi, f"nu={nu} recursion bounds")
        if nu == 0.0:
            gate.check(abs(lo - 104.1267) < 1e-4 and abs(hi - 112.9412) < 1e-4, f"nu=0 interval ({lo}, {hi})")
            gate.fact(f"nu=0: {lo:.4f} < {g4:.4f} < {hi:.4f}")
    gate.finish()


def test_c05_calogero_identities():
    gate = Gate(5, "Calogero identities with N=2000 within the tail bound")
    caps = {"id1": 5e-4, "id2": 1e-6, "id3": 1e-6}
    worst = {}
    for which, cap in caps.items():
        for nu in (0.0, 1.0):
            for k in (1, 2):
                t = identities.calogero_terms(which, nu, k, 2000)
                worst[which] = max(worst.get(which, 0.0), abs(t["residual"]))
                gate.check(abs(t["residual"]) <= t["bound"], f"{which} nu={nu} k={k} residual beyond bound")
                gate.check(t["bound"] <= cap, f"{which} nu={nu} k={k} bound {t['bound']:.1e} > {cap:g}")
    gate.fact(", ".join(f"{w} max |res| {v:.1e}" for w, v in worst.items()))
    gate.finish()


def test_c06_redheffer_suite():
    gate = Gate(6, "Redheffer-type claims with zero violations, sharpness within 1e-3")
    for claim in ("thm7a", "thm7b", "thm7c", "thm7d", "thm8", "thm9", "redheffer56"):
        r = lab.verify(claim)
        gate.check(r.passed and not r.violations, f"{claim}: {len(r.violations)} violations")
    # the limit ratios recomputed here at endpoint/100
    worst = 0.0
    for nu in (-0.9, -0.5, 0.0, 0.5, 1.0, 2.0, 5.0):
        a = zf.dini_zeros(nu, 1)[1]
        g = zf.cross_zeros(nu, 1)[1]
        for tag, z, p, const in (("calD", a, 2, 3 * a * a / (8 * (nu + 1))),
                                 ("calW", g, 4, g ** 4 / (32 * pochhammer(nu + 1, 3)))):
            x = z / 100
            ratio = log_normalized(tag, nu, x) / math.log((z ** p - x ** p) / (z ** p + x ** p))
            worst = max(worst, abs(ratio - const))
            gate.check(abs(ratio - const) <= 1e-3, f"{tag} nu={nu} ratio {ratio} vs {const}")
    gate.fact(f"worst sharpness gap {worst:.1e}")
    gate.finish()


def test_c07_log_derivative_sandwiches():
    gate = Gate(7, "log-derivative sandwiches for n in {1, 2}")
    for claim in ("thm10", "thm11"):
        for n in (1, 2):
            r = lab.verify_logderiv_bounds(claim, n=n, grid=lab.make_grid())
            gate.check(r.passed, f"{claim} n={n}: {len(r.violations)} violations")
            gate.fact(f"{claim} n={n} {r.points_checked} pts")
    gate.finish()


def test_c08_cross_product_equivalence():
    gate = Gate(8, "cross_w series vs combination to 1e-12 relative, 0 <= x <= 10")
    worst = 0.0
    count = 0
    for nu in (-0.9, -0.5, 0.0, 0.5, 1.0, 2.5, 5.0):
        for i in range(0 if nu >= 0 else 1, 401):
            x = i * 0.025
            a = cross_w(nu, x, "series").value
            b = cross_w(nu, x, "combination").value
            rel = abs(a - b) / max(1.0, abs(a))
            worst = max(worst, rel)
            count += 1
            gate.check(rel <= 1e-12, f"nu={nu} x={x} rel {rel:.1e}")
    gate.fact(f"{count} points, worst {worst:.1e}")
    gate.finish()


def test_c09_ode_and_limit():
    gate = Gate(9, "Dini ODE residual <= 1e-8 scale, limit ratio <= 1e-6 for k <= 5")
    worst_ode = worst_lim = 0.0
    for nu in (0.0, 0.5, 2.0):
        a3 = zf.dini_zeros(nu, 3)[3]
        for i in range(1, 20):
            try:
                res, scale = identities.ode_residual(nu, a3 * i / 20)
            except identities.SingularityError:
                continue
            worst_ode = max(worst_ode, abs(res) / scale)
        for k in range(1, 6):
            got, want = identities.limit_ratio(nu, k)
            worst_lim = max(worst_lim, abs(got - want) / max(1.0, abs(want)))
    gate.check(worst_ode <= 1e-8, f"ODE {worst_ode:.1e}")
    gate.check(worst_lim <= 1e-6, f"limit {worst_lim:.1e}")
    r = lab.verify_ode_and_limit(grid=lab.make_grid(nu_grid=[0.0, 0.5, 2.0]))
    gate.check(r.passed, "lab report")
    gate.fact(f"ODE {worst_ode:.1e}, limit {worst_lim:.1e}")
    gate.finish()


def test_c10_absolute_monotonicity():
    gate = Gate(10, "forward differences of orders 1-6 nonnegative within -1e-9, h(0) = 0")
    for claim in ("thm1f", "thm5", "thm6", "cor61"):
        r = lab.verify(claim)
        gate.check(r.passed, f"{claim}: {len(r.violations)} violations")
    worst = 0.0
    for mu, nu in ((-0.5, -0.9), (0.5, 0.0), (2.0, 1.0), (5.0, 2.0), (1.0, 1.0)):
        h = shape.thm6_functions(mu, nu)[2]
        worst = max(worst, abs(h(0.0)))
    gate.check(worst <= 1e-10, f"|h(0)| = {worst:.1e}")
    gate.fact(f"max |h(0)| {worst:.1e}")
    gate.finish()


def _crossings_from_csv(text):
    out = []
    prev = None
    for row in csv.DictReader(io.StringIO(text)):
        if row["f_nu"] == "":
            prev = None
            continue
        x, d = float(row["x"]), float(row["f_nu"]) - float(row["g_nu"])
        if prev is not None and prev[1] > 0 >= d:
            out.append(prev[0] + (x - prev[0]) * prev[1] / (prev[1] - d))
        prev = (x, d)
    return out


def test_c11_figure1_crossings(tmp_path):
    gate = Gate(11, "figure1 CSV crossings of f_2 and g_2 on [0, 15] match gamma_2,1..3 within 1e-4")
    path = tmp_path / "figure1.csv"
    code = cli.main(["figure1", "--nu", "2", "--xmax", "15", "--step", "0.001", "--out", str(path)],
                    io.StringIO())
    gate.check(code == 0, f"exit {code}")
    xs = _crossings_from_csv(path.read_text())
    g = zf.cross_zeros(2.0, 3).zeros
    gate.check(len(xs) == 3, f"{len(xs)} crossings")
    worst = max((abs(a - b) for a, b in zip(xs, g)), default=math.inf)
    gate.check(worst <= 1e-4, f"worst {worst:.1e}")
    gate.fact(f"crossings {', '.join(f'{x:.6f}' for x in xs)}; worst {worst:.1e}")
    gate.finish()
