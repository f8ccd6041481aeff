import json
from fractions import Fraction as F

import pytest

from jonescable.bracket import BraidWord, PDCode, colored_jones
from jonescable.families import (
    CATALOG_NAMES,
    AdequacyError,
    adequate_degrees,
    adequate_summary,
    adequate_surface,
    catalog,
    catalog_json,
    delta_to_dplus,
    dplus_to_delta,
    looks_like_torus,
    pretzel_jx,
    pretzel_slope,
    pretzel_surface,
    torus_degree,
    torus_jones,
    unknot_jones,
)
from jonescable.laurent import QLaurent
from jonescable.quasipoly import QuasiPoly

FIG8_PD = "[[4,2,5,1],[8,6,1,5],[6,3,7,4],[2,7,3,8]]"


def test_unknot_is_quantum_integer():
    assert unknot_jones(1) == QLaurent.constant(1)
    assert unknot_jones(3) == QLaurent.v_power(1) + QLaurent.constant(1) + QLaurent.v_power(-1)


def test_trefoil_degrees():
    model = torus_degree(2, 3)
    assert all(model.value(n) == F(3 * (n * n - 1), 2) for n in range(1, 10))
    assert torus_jones(2, 3, 2).degrees() == (F(9, 2), F(1, 2))


@pytest.mark.parametrize("pq", [(2, 3), (3, 4), (-5, 2), (-3, 4), (4, -3)])
def test_torus_degree_matches_polynomial(pq):
    model = torus_degree(*pq)
    for n in range(1, 9):
        assert torus_jones(*pq, n).degrees()[0] == model.value(n)


def test_negative_torus_is_mirror():
    for n in (2, 3, 4):
        assert torus_jones(-2, 3, n) == torus_jones(2, 3, n).mirror()


def test_trefoil_state_graphs():
    s = adequate_summary(BraidWord.parse("1 1 1"))
    assert (s.v_A, s.v_B, s.c_plus, s.c_minus) == (2, 3, 3, 0)
    assert s.is_A_adequate and s.is_B_adequate
    assert looks_like_torus(s)
    dplus, dminus = adequate_degrees(s)
    assert dplus == torus_degree(2, 3)
    assert dminus.value(2) == F(1, 2)
    assert adequate_surface(s, "B") == adequate_surface(s, "b")
    assert adequate_surface(s, "B").euler == 0


@pytest.mark.parametrize("diagram", [PDCode.from_json(FIG8_PD), BraidWord.parse("1 -2 1 -2 -2 -2")])
def test_adequate_degrees_match_bracket(diagram):
    dplus, dminus = adequate_degrees(adequate_summary(diagram))
    for n in (2, 3):
        top, bottom = colored_jones(diagram, n).degrees()
        assert top == dplus.value(n)
        assert bottom == dminus.value(n)


def test_inadequate_diagram_is_reported():
    s = adequate_summary(BraidWord.parse("1 1 2 1 1 -3 2 -1 2 3 3"))
    assert not s.is_A_adequate and not s.is_B_adequate
    with pytest.raises(AdequacyError):
        adequate_degrees(s)


def test_delta_conversion_roundtrip():
    model = catalog("8_20").dplus
    assert delta_to_dplus(dplus_to_delta(model)).coeffs == model.coeffs
    # d_+(n) = delta(n - 1) + (n - 1)/2
    delta = dplus_to_delta(model)
    assert all(model.value(n) == delta.value(n - 1) + F(n - 1, 2) for n in range(2, 20))


def test_pretzel_formulas():
    assert pretzel_slope(7) == F(37, 2)
    assert pretzel_jx(7) == F(-1, 2)
    assert pretzel_surface(7).euler == -2 and pretzel_surface(7).boundary_count == 2


@pytest.mark.parametrize("name", ["8_20", "8_21", "9_43", "9_44", "9_49"])
def test_catalog_dplus_matches_bracket(name):
    entry = catalog(name)
    for n in (2, 3):
        assert colored_jones(entry.braid, n).degrees()[0] == entry.dplus.value(n)


@pytest.mark.parametrize("name", ["8_19", "8_21", "9_49"])
def test_catalog_dminus_matches_bracket(name):
    entry = catalog(name)
    for n in (2, 3):
        assert colored_jones(entry.braid, n).degrees()[1] == entry.dminus.value(n)


def test_8_19_is_the_3_4_torus_knot():
    assert catalog("8_19").dplus == torus_degree(3, 4)


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_catalog_chirality_matches_tables(name):
    """The braid's top slope at color 3 against color 2 points at js, the
    bottom one at js*."""
    entry = catalog(name)
    top3, bot3 = colored_jones(entry.braid, 3).degrees()
    top2, bot2 = colored_jones(entry.braid, 2).degrees()
    # a quadratic with leading coefficient js/4 grows by 5 js/4 between n = 2 and 3,
    # up to the bounded linear and periodic parts
    assert abs((top3 - top2) - F(5, 4) * max(entry.js)) <= 4
    assert abs((bot3 - bot2) - F(5, 4) * min(entry.js_star)) <= 4


def test_catalog_json_is_deterministic():
    text = catalog_json()
    assert text == catalog_json()
    data = json.loads(text)
    assert [d["name"] for d in data] == list(CATALOG_NAMES)


def test_catalog_lookup_errors():
    with pytest.raises(KeyError):
        catalog("3_1")
    with pytest.raises(KeyError):
        catalog("pretzel:6")
    assert catalog("pretzel:9").js == {F(67, 3)}
