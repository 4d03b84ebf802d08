import pytest
from hypothesis import given, strategies as st

from chinburg import check, check_brv_form
from chinburg.fixtures import load, get
from chinburg.permissible import Status
from chinburg.polyz import IntPoly
from chinburg.torus import RootType

ENTRIES = load()


def _report(e, strict=False):
    if e.kind == "linear":
        return check_brv_form(e.first, e.second, strict_galois=strict)
    return check(e.a, e.b, strict_galois=strict)


@pytest.mark.parametrize("entry", ENTRIES, ids=[e.label for e in ENTRIES])
def test_fixture_verdicts(entry):
    r = _report(entry)
    if entry.kind == "linear":
        assert r.permissible == entry.brv_permissible
        if r.permissible:
            assert r.conductors == tuple(entry.conductors)
        return
    if entry.fails:
        assert not r.permissible
        assert r.first_failure == entry.fails
    else:
        assert r.permissible, r.to_dict()
        assert r.conductors == tuple(entry.conductors)


def test_strict_mode_agrees_on_quadratic_fixtures():
    for e in ENTRIES:
        if e.kind == "quadratic" and not e.fails:
            assert _report(e, strict=True).conductors == tuple(e.conductors)


def test_ray_all_plus():
    r = _report(get("known-7"))
    assert r.permissible and r.toric
    assert all(t.kind == RootType.II_PLUS for t in r.toric)


def test_condition6_counterexample_detail():
    r = _report(get("counterexample-6"))
    assert r.conditions[6].status is Status.FAIL
    assert all(r.conditions[k].status is Status.PASS for k in range(1, 6))


def test_condition1_failures():
    r = check(IntPoly([1, 1]), IntPoly([1, 2]))
    assert r.first_failure == 1
    r = check(IntPoly([1, 0, 1]), IntPoly([1, 0, 0, 0, 1]))   # shifts 2 and 4
    assert r.first_failure == 1


def test_condition2_failure():
    r = check(IntPoly([1, 3, 1]), IntPoly([1, 1, 1]))
    assert r.conditions[2].status is Status.FAIL


def test_brv_sign_normalization():
    e = get("known-11")
    r1 = check_brv_form(e.first, e.second)
    r2 = check_brv_form(e.first, -e.second)
    assert r1.permissible and r2.permissible
    assert r1.conductors == r2.conductors


def test_report_serializes():
    d = _report(get("strong-43")).to_dict()
    assert d["permissible"] and d["conductors"] == [43]
    assert set(d["conditions"]) == {str(k) for k in range(1, 8)}


@given(st.lists(st.integers(-3, 3), min_size=1, max_size=3),
       st.lists(st.integers(-5, 5), min_size=1, max_size=3))
def test_checker_total_on_reciprocal_inputs(ha, hb):
    a = IntPoly(ha + ha[-2::-1])
    b = IntPoly(hb + hb[-2::-1])
    if a.is_zero or b.is_zero:
        return
    r = check(a, b)
    assert set(r.conditions) == set(range(1, 8))
    if r.permissible:
        assert all(f > 0 for f in r.conductors)
