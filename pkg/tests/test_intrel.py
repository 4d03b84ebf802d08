import random
from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import assume, given, strategies as st

from chinburg.fixtures import get
from chinburg.intrel import GUARD, confirm, is_lll_reduced, lindep, lll_reduce
from chinburg.numerics import l_prime_minus1, mahler_quadratic

POOL = [3, 4, 7, 8, 11, 15, 19, 20, 23, 24, 31, 35, 39, 40, 43, 47, 51, 52, 55, 56]

square = st.integers(2, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-50, 50), min_size=n, max_size=n),
                       min_size=n, max_size=n))


@given(square)
def test_lll_output_is_reduced_basis_of_same_lattice(rows):
    m = sympy.Matrix(rows)
    assume(m.det() != 0)
    red = lll_reduce(rows)
    assert is_lll_reduced(red)
    r = sympy.Matrix(red)
    assert abs(r.det()) == abs(m.det())
    u = r * m.inv()
    assert all(x.is_integer for x in u)
    assert abs(u.det()) == 1


def test_lll_small_examples():
    assert {tuple(map(abs, r)) for r in lll_reduce([[1, 0], [1, 1]])} == {(1, 0), (0, 1)}
    with pytest.raises(ValueError):
        lll_reduce([[1, 2], [2, 4]])
    with pytest.raises(ValueError):
        lll_reduce([[1, 0], [0, 1]], delta=Fraction(1, 5))


def test_lll_rectangular():
    rows = [[1, 0, 0, 31416], [0, 1, 0, 27183], [0, 0, 1, 14142]]
    red = lll_reduce(rows)
    assert is_lll_reduced(red)
    assert sympy.Matrix(red).rank() == 3


def _d_values(digits):
    return {f: l_prime_minus1(f, digits).value for f in POOL}


def _random_rational(rng, height=100):
    return Fraction(rng.randint(-height, height), rng.randint(1, height))


def test_planted_relations_recovered():
    rng = random.Random(31)
    lo, hi = _d_values(60), _d_values(90)
    hits = 0
    for _ in range(200):
        fs = rng.sample(POOL, rng.randint(1, 3))
        rs = [_random_rational(rng) for _ in fs]
        while all(r == 0 for r in rs):
            rs = [_random_rational(rng) for _ in fs]

        def combo(vals, d):
            with mpmath.workdps(d + 2 * GUARD):
                return [mpmath.fsum(r.numerator * vals[f] / r.denominator
                                    for f, r in zip(fs, rs))] + [vals[f] for f in fs]

        rel = lindep(combo(lo, 60), 60, recompute=lambda d: combo(hi, d))
        if rel is not None and list(rel.rationals) == rs and rel.confirmed_at:
            hits += 1
    assert hits == 200


def _stream(rng, length=200):
    return "0." + "".join(rng.choice("0123456789") for _ in range(length))


def test_no_false_positives():
    rng = random.Random(97)
    found = 0
    for trial in range(200):
        sx, sy = _stream(rng), _stream(rng)

        def values(d, sx=sx, sy=sy, trial=trial):
            with mpmath.workdps(d + 2 * GUARD):
                x, y = mpmath.mpf(sx[: d + 2]), mpmath.mpf(sy[: d + 2])
                return [x, 1] if trial % 2 else [x, y]

        if lindep(values(60), 60, recompute=values) is not None:
            found += 1
    assert found <= 1


def test_lindep_without_recompute_is_flagged():
    with mpmath.workdps(80):
        d3 = l_prime_minus1(3, 60).value
        rel = lindep([d3 * 7 / 5, d3], 60)
    assert rel.rationals == (Fraction(7, 5),)
    assert rel.confirmed_at is None and rel.notes


def test_lindep_needs_two_numbers():
    with pytest.raises(ValueError):
        lindep([mpmath.mpf(1)], 30)


@pytest.mark.parametrize("label", ["strong-43", "example-3-35"])
def test_residual_scales_with_precision(label):
    e = get(label)
    fs = sorted(e.ratios)

    def values(d):
        return [mahler_quadratic(e.a, e.b, d).value] + [l_prime_minus1(f, d).value for f in fs]

    rel = lindep(values(60), 60, recompute=values)
    assert rel is not None and rel.confirmed_at == 90
    assert dict(zip(fs, rel.rationals)) == e.ratios
    assert confirm(rel, values, 120)
    with mpmath.workdps(140):
        res = abs(mpmath.fsum(c * v for c, v in zip(rel.coefficients, values(120))))
    assert res < mpmath.mpf(10) ** -(120 - 2 * GUARD)


def test_relation_to_dict():
    with mpmath.workdps(80):
        d3 = l_prime_minus1(3, 60).value
        rel = lindep([d3 * 10, d3], 60, recompute=lambda d: [l_prime_minus1(3, d).value * 10,
                                                            l_prime_minus1(3, d).value])
    d = rel.to_dict()
    assert d["rationals"] == ["10"] and d["confirmed_at"] == 90


def test_lll_identity_is_fixed():
    eye = [[1 if i == j else 0 for j in range(4)] for i in range(4)]
    assert lll_reduce(eye) == eye


def test_lindep_equal_inputs():
    with mpmath.workdps(50):
        x = mpmath.pi
        rel = lindep([x, x], 40, recompute=lambda d: [mpmath.pi, mpmath.pi])
    assert rel.coefficients == (1, -1) and rel.rationals == (Fraction(1),)
