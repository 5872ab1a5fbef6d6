import math
import threading

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dinicross import BracketError, DomainError, zero_finder as zf
from dinicross.special_core import evaluate

ORACLE_KINDS = {
    "J": zf.bessel_j_zeros, "dini": zf.dini_zeros, "cross": zf.cross_zeros,
    "dini_prime": lambda nu, c: zf.derivative_zeros("dini_prime", nu, c),
    "calD_prime": lambda nu, c: zf.derivative_zeros("calD_prime", nu, c),
    "calW_prime": lambda nu, c: zf.derivative_zeros("calW_prime", nu, c),
    "W_prime": lambda nu, c: zf.derivative_zeros("W_prime", nu, c),
}
orders = st.floats(min_value=-0.95, max_value=8.0, allow_nan=False)


def test_zeros_against_mpmath_oracle(oracle):
    assert len(oracle["zeros"]) > 30
    for key, want in oracle["zeros"].items():
        kind, nu = key.split("@")
        got = ORACLE_KINDS[kind](float(nu), len(want))
        for n, w in enumerate(want, 1):
            assert abs(got[n] - float(w)) <= 1e-11 * float(w), (key, n)


def test_nu0_against_oracle(oracle):
    assert abs(zf.nu0() - float(oracle["nu0"])) < 1e-11


@given(orders)
@settings(max_examples=25, deadline=None)
def test_interlacing_chain_property(nu):
    a = zf.dini_zeros(nu, 21).zeros
    j = zf.bessel_j_zeros(nu, 21).zeros
    g = zf.cross_zeros(nu, 20).zeros
    for n in range(20):
        assert a[n] < j[n] < g[n] < a[n + 1] < j[n + 1]


@given(st.floats(min_value=-0.95, max_value=8.0), st.floats(min_value=0.01, max_value=3.0))
@settings(max_examples=25, deadline=None)
def test_cross_zeros_increase_with_order(nu, dnu):
    lo = zf.cross_zeros(nu, 8).zeros
    hi = zf.cross_zeros(nu + dnu, 8).zeros
    assert np.all(hi > lo)


@pytest.mark.parametrize("kind", ["J", "dini", "cross", "calD_prime", "calW_prime"])
@pytest.mark.parametrize("nu", (-0.9, 0.0, 2.0))
def test_residuals_and_one_change_per_gap(kind, nu):
    t = ORACLE_KINDS[kind](nu, 50)
    assert np.all(t.residuals <= 1e-10)
    assert np.all(np.diff(t.zeros) > 0)
    edges = np.concatenate([[1e-3 * t.zeros[0]], 0.5 * (t.zeros[:-1] + t.zeros[1:]), [t.zeros[-1] + 1.0]])
    counts = zf.rescan(t, list(zip(edges[:-1], edges[1:])), samples=64)
    assert counts == [1] * 50


@pytest.mark.parametrize("nu", (0.5, 3.0))
def test_dini_prime_zeros_one_per_gap(nu):
    t = zf.derivative_zeros("dini_prime", nu, 20)
    a = zf.dini_zeros(nu, 20).zeros
    assert t.zeros[0] < a[0]
    assert np.all(t.zeros[1:] > a[:-1]) and np.all(t.zeros[1:] < a[1:])


@pytest.mark.parametrize("nu", (-0.9, -0.3, 1.0))
def test_w_prime_zeros_are_critical_points(nu):
    t = zf.derivative_zeros("W_prime", nu, 10)
    for z in t.zeros:
        d = evaluate("W", nu, z, 1).value
        scale = abs(evaluate("W", nu, z * 0.99, 1).value) + abs(evaluate("W", nu, z).value) / z
        assert abs(d) < 1e-9 * scale


def test_high_index_against_mpmath():
    t = zf.bessel_j_zeros(1.0, 500)
    assert abs(t[500] - float(mp.besseljzero(1, 500))) < 1e-11 * t[500]
    g = zf.cross_zeros(0.0, 500)
    z = g[500]
    mp.mp.dps = 30
    f = lambda x: mp.besselj(0, x) * mp.besseli(1, x) + mp.besseli(0, x) * mp.besselj(1, x)  # noqa: E731
    # normalize by I_0 so the check is on the oscillating part
    assert abs(f(z) / mp.besseli(0, z)) < 1e-9


def test_asymptotic_spacing():
    g = zf.cross_zeros(1.0, 2000).zeros
    gaps = np.diff(g[-100:])
    assert np.all(np.abs(gaps - math.pi) < 1e-3)


def test_table_api_readonly_prefix_and_cache():
    t = zf.cross_zeros(0.7, 30)
    assert len(t) == 30 and t.fn == "cross" and t.nu == 0.7
    with pytest.raises(ValueError):
        t.zeros[0] = 1.0
    with pytest.raises(IndexError):
        t[0]
    short = zf.cross_zeros(0.7, 10)
    assert np.array_equal(short.zeros, t.zeros[:10])
    assert zf.cross_zeros(0.7, 30) is t
    assert t.head(3).to_csv().splitlines()[0] == "index,zero,residual"
    assert len(t.head(3).to_csv().splitlines()) == 4


def test_concurrent_requests_agree():
    out = {}

    def work(i):
        out[i] = zf.dini_zeros(1.3, 40 + i).zeros[:40].copy()

    threads = [threading.Thread(target=work, args=(i,)) for i in range(6)]
    for th in threads:
        th.start()
    for th in threads:
        th.join()
    for i in range(1, 6):
        assert np.array_equal(out[0], out[i])


@pytest.mark.parametrize("bad", [
    lambda: zf.cross_zeros(-1.0, 3),
    lambda: zf.cross_zeros(0.0, 0),
    lambda: zf.cross_zeros(0.0, 3, tol=1e-15),
    lambda: zf.derivative_zeros("dini_prime", 0.0, 3),
    lambda: zf.derivative_zeros("W_prime", -0.5, 3),
    lambda: zf.derivative_zeros("nope", 1.0, 3),
    lambda: zf.power_tail_bound(10.0, 1.0),
    lambda: zf.figure1_rows(2.0, 15.0, 0.0),
    lambda: zf.interlacing_chain(0.0, 0),
])
def test_domain_errors(bad):
    with pytest.raises(DomainError):
        bad()


def test_bracket_error_is_domain_distinct():
    assert not issubclass(BracketError, DomainError)


def test_zeros_up_to():
    zs = zf.zeros_up_to("calW", 0.0, 20.0)
    assert zs == [float(z) for z in zf.cross_zeros(0.0, 10).zeros if z <= 20.0]
    assert zs[-1] <= 20.0 < zf.cross_zeros(0.0, len(zs) + 1)[len(zs) + 1]


@pytest.mark.parametrize("p", (2, 4, 8))
def test_power_tail_bound_covers_true_tail(p):
    z = zf.cross_zeros(0.0, 3000).zeros
    true_tail = math.fsum((z[1000:] ** -float(p)).tolist())
    # the tail past 3000 is smaller than the bound at 3000, so add it
    true_tail += zf.power_tail_bound(z[-1], p)
    assert true_tail <= zf.power_tail_bound(z[999], p) + zf.power_tail_bound(z[-1], p)
    assert math.fsum((z[1000:] ** -float(p)).tolist()) <= zf.power_tail_bound(z[999], p)


@pytest.mark.parametrize("nu", (-0.9, 0.0, 4.0))
def test_sum_with_tail_recovers_rayleigh_sum(nu):
    from dinicross import rayleigh

    z = zf.dini_zeros(nu, 300).zeros
    partial, est, bound = zf.sum_with_tail(lambda x: x ** -2.0, z)
    exact = rayleigh.closed_form("eta", nu, 1)
    assert abs(partial + est - exact) <= bound
    assert bound < 1e-5 * exact


def test_figure1_crossings_are_cross_zeros():
    rows = zf.figure1_rows(2.0, 15.0, 0.001)
    xs = zf.crossings(rows)
    g = zf.cross_zeros(2.0, 3).zeros
    assert len(xs) == 3
    assert np.all(np.abs(np.array(xs) - g) < 1e-6)
    assert rows[0] == (0.0, 2.0, 2.0)


def test_figure1_masks_poles():
    j1 = zf.bessel_j_zeros(2.0, 1)[1]
    step = j1 / 1000
    rows = zf.figure1_rows(2.0, 2 * j1, step)
    masked = [x for x, f, _ in rows if f is None]
    assert len(masked) == 1 and abs(masked[0] - j1) < 1e-9 * j1
    csv = zf.figure1_csv(rows).splitlines()
    assert csv[0] == "x,f_nu,g_nu"
    assert sum(1 for line in csv if ",," in line) == 1


def test_interlacing_chain_report():
    r = zf.interlacing_chain(0.5, 10)
    assert r.passed and r.points_checked == 40 and r.min_margin > 0


@pytest.mark.parametrize("kind", ["J", "dini", "cross", "calW_prime", "W_prime"])
def test_residual_within_ten_tol_slope(kind):
    t = zf.zeros(kind, 0.3, 2000)
    f, fp = zf.kernel(kind, 0.3, t.zeros)
    assert np.array_equal(np.abs(f), t.residuals)
    assert np.all(t.residuals <= 10 * t.tol * np.maximum(1.0, t.zeros) * np.abs(fp))
