import random

import mpmath
import pytest
from hypothesis import given, strategies as st
from sympy.functions.combinatorial.numbers import kronecker_symbol

from chinburg.numerics import (
    InconsistencyError, bloch_wigner, cassaigne_maillot, clausen, d_value_routes,
    hurwitz_zeta2, kronecker, kronecker_chi, l_prime_minus1, li2, verify_thm41,
)
from chinburg.numerics.special import suggest_conductor

FUNDAMENTAL = [3, 4, 7, 8, 11, 15, 19, 20, 23, 24, 31, 35, 39, 40, 43]


def eps(d):
    return mpmath.mpf(10) ** -d


@given(st.integers(-500, 500), st.integers(-500, 500))
def test_kronecker_matches_sympy(a, n):
    assert kronecker(a, n) == kronecker_symbol(a, n)


@pytest.mark.parametrize("f", FUNDAMENTAL)
def test_character_is_odd_and_periodic(f):
    assert kronecker_chi(f, f - 1) == -1
    for u in range(1, 3 * f):
        assert kronecker_chi(f, u) == kronecker_chi(f, u + f)
        for v in range(1, 12):
            assert kronecker_chi(f, u * v) == kronecker_chi(f, u) * kronecker_chi(f, v)


def test_character_table_examples():
    assert [kronecker_chi(3, u) for u in range(1, 7)] == [1, -1, 0, 1, -1, 0]
    assert [kronecker_chi(4, u) for u in range(1, 5)] == [1, 0, -1, 0]
    with pytest.raises(ValueError):
        kronecker_chi(5, 1)
    assert suggest_conductor(5) == 20
    assert suggest_conductor(3) is None


@given(st.floats(min_value=-20, max_value=20, allow_nan=False))
def test_clausen_matches_mpmath(theta):
    with mpmath.workdps(50):
        ref = mpmath.clsin(2, theta)
    ours = clausen(theta, 40)
    assert abs(ours.value - ref) < eps(38)


def test_clausen_special_values():
    with mpmath.workdps(60):
        assert abs(clausen(mpmath.pi / 2, 50).value - mpmath.catalan) < eps(48)
        assert clausen(0, 50).value == 0
        assert abs(clausen(mpmath.pi, 50).value) < eps(48)


def test_clausen_duplication():
    rng = random.Random(7)
    with mpmath.workdps(50):
        for _ in range(100):
            t = mpmath.mpf(rng.uniform(0.001, 3.14))
            lhs = clausen(2 * t, 40).value
            rhs = 2 * clausen(t, 40).value - 2 * clausen(mpmath.pi - t, 40).value
            assert abs(lhs - rhs) < eps(36)


def test_bloch_wigner_conjugate_antisymmetry():
    rng = random.Random(11)
    with mpmath.workdps(40):
        for _ in range(100):
            z = mpmath.mpc(rng.uniform(-4, 4), rng.uniform(-4, 4))
            assert abs(bloch_wigner(z.conjugate()) + bloch_wigner(z)) < eps(35)


@given(st.complex_numbers(max_magnitude=6, allow_nan=False, allow_infinity=False))
def test_bloch_wigner_definition(z):
    if abs(z) < 1e-6 or abs(z - 1) < 1e-6 or abs(z.imag) < 1e-9:
        return
    with mpmath.workdps(40):
        z = mpmath.mpc(z)
        ref = mpmath.im(mpmath.polylog(2, z)) + mpmath.arg(1 - z) * mpmath.log(abs(z))
        assert abs(bloch_wigner(z) - ref) < eps(32)


@given(st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False))
def test_li2_matches_polylog(z):
    if abs(z - 1) < 1e-6:
        return
    with mpmath.workdps(40):
        z = mpmath.mpc(z)
        # stay off the branch cut (1, inf)
        if mpmath.im(z) == 0 and mpmath.re(z) > 1:
            return
        assert abs(li2(z) - mpmath.polylog(2, z)) < eps(32) * max(1, abs(mpmath.polylog(2, z)))


@given(st.fractions(min_value="1/100", max_value=5, max_denominator=200))
def test_hurwitz_matches_mpmath(a):
    with mpmath.workdps(50):
        x = mpmath.mpf(a.numerator) / a.denominator
        val, err = hurwitz_zeta2(x, 50)
        assert abs(val - mpmath.zeta(2, x)) < eps(45)
        assert err < eps(45)


def _lprime_oracle(f, dps=40):
    """L'(chi_-f, -1) from mpmath's Hurwitz zeta derivative."""
    with mpmath.workdps(dps):
        s = -1
        total = mpmath.mpf(0)
        for k in range(1, f):
            c = kronecker(-f, k)
            if c:
                a = mpmath.mpf(k) / f
                total += c * (mpmath.zeta(s, a, 1) - mpmath.log(f) * mpmath.zeta(s, a))
        return total * mpmath.power(f, -s)


@pytest.mark.parametrize("f", [3, 4, 7, 8, 15, 43])
def test_d_value_matches_oracle(f):
    assert abs(l_prime_minus1(f, 40).value - _lprime_oracle(f)) < eps(35)


def test_d3_literal():
    assert mpmath.nstr(l_prime_minus1(3, 30).value, 15) == "0.323065947219451"


@pytest.mark.parametrize("f", FUNDAMENTAL)
def test_dual_routes_agree(f):
    c, h = d_value_routes(f, 50)
    assert abs(c.value - h.value) < eps(45)


def test_rejects_non_fundamental():
    for f in (1, 5, 9, 12, 16):
        with pytest.raises(ValueError):
            l_prime_minus1(f, 30)


def test_inconsistency_is_an_error_type():
    assert issubclass(InconsistencyError, RuntimeError)


def test_cassaigne_maillot_equilateral_is_d3():
    assert abs(cassaigne_maillot(1, 1, 1, 50).value - l_prime_minus1(3, 50).value) < eps(45)


def test_cassaigne_maillot_matches_quadrature():
    # m(2x + 3y + 4) by Jensen in y; the kink sits at cos t = -11/16
    with mpmath.workdps(30):
        f = lambda t: mpmath.log(max(mpmath.mpf(3), abs(2 * mpmath.expj(t) + 4)))  # noqa: E731
        k = mpmath.acos(mpmath.mpf(-11) / 16)
        ref = mpmath.quad(f, [0, k, 2 * mpmath.pi - k, 2 * mpmath.pi]) / (2 * mpmath.pi)
        assert abs(cassaigne_maillot(2, 3, 4, 30).value - ref) < eps(20)


def test_cassaigne_maillot_rejects_degenerate():
    for sides in ((1, 1, 2), (1, 1, 3), (0, 1, 1)):
        with pytest.raises(ValueError):
            cassaigne_maillot(*sides, 30)


@pytest.mark.parametrize("f", [3, 4, 7])
def test_sine_product_identity(f):
    r = verify_thm41(f, 40)
    assert r["ok"] and r["diff"] < eps(30)


def test_cassaigne_maillot_near_degenerate():
    ok = cassaigne_maillot(1, 1, "1.999999", 30)
    assert ok.err < eps(25)
    with pytest.raises(ValueError):
        cassaigne_maillot(1, 1, "1.99999999999999999999999", 30)
