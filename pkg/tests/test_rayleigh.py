from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dinicross import DomainError, LengthError, rayleigh as ry

NUS = (-0.9, -0.5, 0.0, 0.5, 1.0, 2.0, 5.0)


def test_exact_rational_values_at_order_zero():
    z = ry.euler_rayleigh(ry.coefficients("zeta", Fraction(0), 2), 2)
    assert z == [Fraction(1, 96), Fraction(17, 184320)]
    assert ry.closed_form("zeta", Fraction(0), 2) == Fraction(17, 184320)
    e = ry.euler_rayleigh(ry.coefficients("eta", Fraction(1), 1), 1)
    assert e == [Fraction(3, 8)]


@pytest.mark.parametrize("nu", NUS)
def test_closed_forms_match_recursion(nu):
    for fam, m in (("eta", 1), ("sigma", 1), ("zeta", 1), ("zeta", 2)):
        a = ry.rayleigh(fam, nu, m, "closed").value
        b = ry.rayleigh(fam, nu, m, "recursion").value
        assert abs(a - b) <= 1e-13 * abs(a)


@pytest.mark.parametrize("family", ry.FAMILIES)
@pytest.mark.parametrize("nu", (-0.9, 0.0, 2.0))
def test_recursion_matches_direct_within_tail(family, nu):
    for m in range(1, 5):
        r = ry.rayleigh(family, nu, m, "recursion").value
        d = ry.rayleigh(family, nu, m, "direct")
        assert abs(r - d.value) <= d.tail_err + 1e-14 * r


@given(st.floats(min_value=-0.95, max_value=10.0), st.sampled_from(ry.FAMILIES))
@settings(max_examples=60, deadline=None)
def test_positive_and_decaying(nu, family):
    from dinicross import zero_finder as zf

    R = ry.recursion_values(family, nu, 8)
    z1 = zf.zeros(ry._KIND[family], nu, 1)[1]
    p = ry._POWER[family]
    for m in range(7):
        assert R[m] > 0
        assert R[m + 1] < R[m] * z1 ** -p * (1 + 1e-12)


@pytest.mark.parametrize("target", ("alpha1", "gamma1", "j1"))
@pytest.mark.parametrize("nu", NUS)
def test_bounds_bracket_smallest_zero(target, nu):
    from dinicross import zero_finder as zf

    kind = {"alpha1": "dini", "gamma1": "cross", "j1": "J"}[target]
    p = 4 if target == "gamma1" else 2
    zp = zf.zeros(kind, nu, 1)[1] ** p
    widths = []
    for m in (1, 2, 3):
        lo, hi = ry.smallest_zero_bounds(target, nu, m)
        assert lo < zp < hi
        widths.append(hi - lo)
    assert widths[0] > widths[1] > widths[2]


@pytest.mark.parametrize("nu", NUS)
def test_sequences_a_and_b_negative(nu):
    # the true values shrink like (z_1/z_2)^{pk} relative to R_k, so only
    # negativity up to roundoff in R_k is testable at large k
    eta = ry.recursion_values("eta", nu, 9)
    zeta = ry.recursion_values("zeta", nu, 9)
    A = ry.sequence_A(nu, 8)
    B = ry.sequence_B(nu, 8)
    assert A[0] < 0 and B[0] < 0
    assert all(a < 1e-13 * eta[k] for k, a in enumerate(A))
    assert all(b < 1e-13 * zeta[k] for k, b in enumerate(B))


def test_errors():
    with pytest.raises(LengthError):
        ry.euler_rayleigh([1.0, 2.0], 3)
    with pytest.raises(DomainError):
        ry.euler_rayleigh([1.0], 0)
    with pytest.raises(DomainError):
        ry.recursion_values("zeta", 0.0, 13)
    with pytest.raises(DomainError):
        ry.rayleigh("zeta", -1.2, 1)
    with pytest.raises(DomainError):
        ry.rayleigh("zeta", 0.0, 3, "closed")
    with pytest.raises(DomainError):
        ry.rayleigh("omega", 0.0, 1)
    with pytest.raises(DomainError):
        ry.smallest_zero_bounds("beta1", 0.0, 1)


def test_csv_row_format():
    v = ry.zeta(0.0, 1)
    assert v.csv_row() == "zeta,0,1,recursion,0.010416666666666666,0"
    assert ry.CSV_HEADER.count(",") == v.csv_row().count(",")
