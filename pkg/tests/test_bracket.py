"""Bracket evaluators checked against classical Jones polynomials from
published knot tables: for a knot, J(2) = (v^(1/2) + v^(-1/2)) V(t = v)."""

from fractions import Fraction

import pytest

from jonescable.bracket import (
    UNKNOT_BRAID,
    UNKNOT_PD,
    BraidWord,
    BudgetExceeded,
    DiagramError,
    PDCode,
    braid_to_pd,
    cable_braid,
    cable_pd,
    chebyshev,
    colored_jones,
    kauffman_bracket,
)
from jonescable.laurent import ONE, QLaurent

TREFOIL_PD = "[[1,5,2,4],[3,1,4,6],[5,3,6,2]]"
FIG8_PD = "[[4,2,5,1],[8,6,1,5],[6,3,7,4],[2,7,3,8]]"
K52_PD = "[[1,5,2,4],[3,9,4,8],[5,1,6,10],[7,3,8,2],[9,7,10,6]]"


def from_jones(v_poly: dict[int, int]) -> QLaurent:
    s = QLaurent.v_power(Fraction(1, 2)) + QLaurent.v_power(Fraction(-1, 2))
    total = QLaurent()
    for e, c in v_poly.items():
        total = total + QLaurent.v_power(e) * c
    return s * total


@pytest.mark.parametrize(
    "diagram, jones",
    [
        (PDCode.from_json(TREFOIL_PD), {1: 1, 3: 1, 4: -1}),
        (PDCode.from_json(FIG8_PD), {-2: 1, -1: -1, 0: 1, 1: -1, 2: 1}),
        (PDCode.from_json(K52_PD), {1: 1, 2: -1, 3: 2, 4: -1, 5: 1, 6: -1}),
        (BraidWord.parse("1 1 1 1 1"), {2: 1, 4: 1, 5: -1, 6: 1, 7: -1}),
        (BraidWord.parse("1 1 1 2 1 1 1 2"), {3: 1, 5: 1, 8: -1}),
        (BraidWord.parse("1 -2 1 -2"), {-2: 1, -1: -1, 0: 1, 1: -1, 2: 1}),
    ],
)
def test_color_two_matches_jones_tables(diagram, jones):
    assert colored_jones(diagram, 2) == from_jones(jones)


def test_trefoil_color_two_explicit():
    j = colored_jones(BraidWord.parse("1 1 1"), 2)
    assert str(j) == "-v^(9/2) + v^(5/2) + v^(3/2) + v^(1/2)"


def test_unknot_and_color_one():
    assert colored_jones(UNKNOT_BRAID, 3) == colored_jones(UNKNOT_PD, 3)
    assert colored_jones(BraidWord.parse("1 -2 1 -2"), 1) == ONE
    # the unknot's J(n) is the quantum integer [n]
    assert colored_jones(UNKNOT_BRAID, 3) == QLaurent.v_power(1) + ONE + QLaurent.v_power(-1)


def test_braid_and_pd_of_the_same_knot_agree():
    braid = BraidWord.parse("1 -2 1 -2")
    assert colored_jones(braid, 3) == colored_jones(PDCode.from_json(FIG8_PD), 3)
    assert colored_jones(braid_to_pd(braid), 3, backend="state_sum") == colored_jones(braid, 3, backend="tl")


@pytest.mark.parametrize("m", [1, 2])
def test_backends_agree_on_trefoil_cables(m):
    braid = BraidWord.parse("1 1 1")
    tl = kauffman_bracket(cable_braid(braid, m), backend="tl")
    ss = kauffman_bracket(cable_pd(braid_to_pd(braid), m), backend="state_sum")
    assert tl == ss


@pytest.mark.parametrize("m", [1, 2])
def test_backends_agree_on_figure_eight_cables(m):
    pd = PDCode.from_json(FIG8_PD)
    braid = BraidWord.parse("1 -2 1 -2")
    assert kauffman_bracket(cable_pd(pd, m), backend="state_sum") == kauffman_bracket(cable_braid(braid, m), backend="tl")


def test_reidemeister_two_and_markov_invariance():
    trefoil = colored_jones(BraidWord.parse("1 1 1"), 3)
    assert colored_jones(BraidWord.parse("1 1 1 2 1 -1"), 3) == trefoil
    assert colored_jones(BraidWord.parse("1 2 -2 1 1 2"), 3) == trefoil
    assert colored_jones(BraidWord.parse("1 1 1 -2"), 3) == trefoil


def test_mirror_negates_degrees():
    braid = BraidWord.parse("1 1 1 2 -1 2")
    j = colored_jones(braid, 3)
    assert colored_jones(braid.mirror(), 3) == j.mirror()
    pd = PDCode.from_json(K52_PD)
    assert colored_jones(pd.mirror(), 2) == colored_jones(pd, 2).mirror()


def test_amphichiral_figure_eight():
    j = colored_jones(PDCode.from_json(FIG8_PD), 3)
    assert j == j.mirror()


def test_chebyshev():
    assert chebyshev(0) == {0: 1}
    assert chebyshev(2) == {2: 1, 0: -1}
    assert chebyshev(3) == {3: 1, 1: -2}
    assert chebyshev(4) == {4: 1, 2: -3, 0: 1}


def test_braid_structure():
    b = BraidWord.parse("1 1 1")
    assert b.strands == 2 and b.writhe() == 3 and b.is_knot()
    assert BraidWord.parse("1 1").components() == 2
    assert BraidWord.parse("1 -2 1 -2").writhe() == 0
    assert str(BraidWord.parse("1 -2")) == "1 -2"


def test_pd_signs_and_writhe():
    pd = PDCode.from_json(TREFOIL_PD)
    assert pd.c == 3 and pd.writhe() in (3, -3)
    assert PDCode.from_json(FIG8_PD).writhe() == 0
    assert PDCode.from_json(pd.to_json()).crossings == pd.crossings


def test_links_are_rejected():
    with pytest.raises(DiagramError):
        colored_jones(BraidWord.parse("1 1"), 2)


def test_malformed_pd_is_rejected():
    with pytest.raises((DiagramError, ValueError)):
        PDCode.from_json("[[1,2,3,4]]")


def test_budgets():
    braid = BraidWord.parse("1 -2 1 -2")
    with pytest.raises(BudgetExceeded):
        colored_jones(braid, 6, max_strands=6, max_crossings=20)
    with pytest.raises(BudgetExceeded):
        kauffman_bracket(cable_pd(PDCode.from_json(FIG8_PD), 3), backend="state_sum", max_crossings=20)
