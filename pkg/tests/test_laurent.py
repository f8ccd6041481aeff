from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from jonescable.laurent import DELTA, ONE, NoDegreeError, QLaurent, degrees, mirror

polys = st.dictionaries(st.integers(-40, 40), st.integers(-5, 5), max_size=6).map(QLaurent)


@given(polys, polys)
def test_add_commutes(f, g):
    assert f + g == g + f


@given(polys, polys, polys)
def test_mul_associative_and_distributive(f, g, h):
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h


@given(polys)
def test_identities(f):
    assert f * ONE == f
    assert f + QLaurent() == f
    assert f - f == QLaurent()


@given(polys, polys)
def test_mirror_is_a_ring_map(f, g):
    assert mirror(f * g) == mirror(f) * mirror(g)
    assert mirror(mirror(f)) == f


@given(polys, polys)
def test_degree_of_product(f, g):
    if f and g:
        assert degrees(f * g)[0] == degrees(f)[0] + degrees(g)[0]
        assert degrees(f * g)[1] == degrees(f)[1] + degrees(g)[1]


def test_zero_coefficients_are_dropped():
    assert QLaurent({4: 1, 0: 0}).to_pairs() == [[4, "1"]]
    assert len(QLaurent({1: 0})) == 0


def test_delta_and_degrees():
    assert DELTA == -(QLaurent.v_power(Fraction(1, 2)) + QLaurent.v_power(Fraction(-1, 2)))
    assert DELTA.degrees() == (Fraction(1, 2), Fraction(-1, 2))
    with pytest.raises(NoDegreeError):
        QLaurent().degrees()


def test_v_power_rejects_eighths():
    with pytest.raises(ValueError):
        QLaurent.v_power(Fraction(1, 8))


def test_shift_and_top_slice():
    f = QLaurent({0: 1, 2: -3, 9: 2})
    assert f.shift(4) == QLaurent({4: 1, 6: -3, 13: 2})
    assert f.top_slice(7) == QLaurent({2: -3, 9: 2})


@given(polys)
def test_json_roundtrip(f):
    assert QLaurent.from_json(f.to_json()) == f


def test_big_coefficients_are_exact():
    f = QLaurent({0: 10**40 + 1})
    assert (f * f).coefficient(0) == (10**40 + 1) ** 2


def test_str():
    assert str(ONE) == "1"
    assert str(QLaurent.v_power(Fraction(9, 2)) * -1 + QLaurent.v_power(Fraction(1, 2))) == "-v^(9/2) + v^(1/2)"
