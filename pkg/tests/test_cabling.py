from fractions import Fraction as F

import pytest

from jonescable.bracket import BraidWord, colored_jones
from jonescable.cabling import (
    CableParams,
    CancellationRisk,
    HypothesisError,
    ParameterError,
    SlopeCollision,
    SurfaceData,
    admissible_constant_a,
    cable_boundary_slopes,
    cable_jones,
    cable_surface,
    cabling_annulus,
    closed_form_period2,
    half_indices,
    m1_m2,
    predict_cable_degree,
    term_degree_f,
)
from jonescable.families import UNKNOT_MODEL, catalog, torus_degree, torus_jones, unknot_jones
from jonescable.laurent import QLaurent
from jonescable.quasipoly import DomainError, QuasiPoly

TREFOIL = torus_degree(2, 3)


def trefoil_jones(n):
    return torus_jones(2, 3, n)


def test_half_indices():
    assert list(half_indices(1)) == [0]
    assert list(half_indices(4)) == [-3, -1, 1, 3]


@pytest.mark.parametrize("n", [2, 3])
def test_cable_of_unknot_is_the_bracket_trefoil(n):
    # independent paths: cabling sum on the unknot vs the bracket state sum
    assert cable_jones(unknot_jones, CableParams(3, 2), n) == colored_jones(BraidWord.parse("1 1 1"), n)
    assert cable_jones(unknot_jones, CableParams(2, 3), n) == colored_jones(BraidWord.parse("1 1 1"), n)


def test_orientation_reversal_is_harmless():
    assert cable_jones(trefoil_jones, CableParams(11, 2), 3) == cable_jones(trefoil_jones, CableParams(-11, -2), 3)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_top_window_is_exact(n):
    full = cable_jones(trefoil_jones, CableParams(11, 2), n)
    assert cable_jones(trefoil_jones, CableParams(11, 2), n, top_window=8) == full.top_slice(8)


def test_inherited_branch_closed_form():
    pred = closed_form_period2(TREFOIL, CableParams(11, 2))
    assert pred.case_tag == "inherited"
    assert pred.model.coeffs == ((6, F(-1, 2), F(-11, 2)),)
    for n in range(1, 6):
        assert cable_jones(trefoil_jones, CableParams(11, 2), n).degrees()[0] == 6 * n * n - F(n, 2) - F(11, 2)


def test_annulus_branch_closed_form():
    pred = closed_form_period2(TREFOIL, CableParams(13, 2))
    assert pred.case_tag == "annulus"
    for n in range(1, 6):
        expect = F(13 * (n * n - 1), 2)
        assert pred.model.value(n) == expect
        assert cable_jones(trefoil_jones, CableParams(13, 2), n).degrees()[0] == expect


def test_predictor_matches_closed_form():
    for p in (-7, -1, 5, 11, 13, 17):
        params = CableParams(p, 2)
        assert predict_cable_degree(TREFOIL, params).model == closed_form_period2(TREFOIL, params).model


def test_trace_records_winner_and_margin():
    pred = predict_cable_degree(TREFOIL, CableParams(11, 2), range(1, 12))
    assert pred.trace[0].margin is None
    assert all(t.twok == t.n - 1 and t.margin > 0 for t in pred.trace[1:])


def test_positive_b_is_refused():
    with pytest.raises(HypothesisError, match="b\\(n\\) <= 0"):
        predict_cable_degree(UNKNOT_MODEL, CableParams(3, 2))


def test_slope_collision():
    base = QuasiPoly(1, ((F(3, 8), F(-1, 2), F(1, 8)),))
    with pytest.raises(SlopeCollision):
        closed_form_period2(base, CableParams(3, 2))


def test_tie_raises_or_truncates():
    base = catalog("8_21").dplus
    with pytest.raises(CancellationRisk) as info:
        predict_cable_degree(base, CableParams(1, 2))
    assert set(info.value.tied) == {F(3, 2), F(-1, 2)}
    pred = predict_cable_degree(base, CableParams(1, 2), on_tie="truncate")
    assert pred.model.valid_from == 5
    assert [t.n for t in pred.trace if t.margin == 0] == [4]


def test_parameters():
    with pytest.raises(ParameterError):
        CableParams(3, 1)
    with pytest.raises(ParameterError):
        CableParams(4, 2)
    assert CableParams(-3, -2).normalized() == CableParams(3, 2)


def test_constant_a_thresholds_for_8_20():
    model = catalog("8_20").dplus
    assert m1_m2(model) == (F(1, 3), F(-1, 3))
    assert admissible_constant_a(model, CableParams(1, 2))
    assert not admissible_constant_a(model, CableParams(5, 2))
    assert admissible_constant_a(model, CableParams(7, 2))


def test_boundary_slopes_and_surfaces():
    params = CableParams(11, 2)
    assert cable_boundary_slopes({0, 6}, params) == {0, 24, 22}
    assert cable_surface(SurfaceData(6, 0, 1), params) == SurfaceData(24, -1, 1)
    assert cabling_annulus(params) == SurfaceData(22, 0, 2)
    with pytest.raises(DomainError):
        cable_surface(SurfaceData(F(8, 3), -3, 1), params)


def test_term_degrees():
    params = CableParams(11, 2)
    assert term_degree_f(TREFOIL, params, 0) == 0
    assert term_degree_f(TREFOIL, params, 4) == -110 + 120
    assert term_degree_f(TREFOIL, params, -4) == -66 + 72


def test_color_one_is_trivial():
    assert cable_jones(trefoil_jones, CableParams(11, 2), 1) == QLaurent.constant(1)


def test_annulus_branch_on_8_19():
    pred = closed_form_period2(catalog("8_19").dplus, CableParams(25, 2))
    assert set(pred.A) == {F(25, 2)} and set(pred.B) == {0}


def test_thresholds_on_single_residue_and_fusion_models():
    from jonescable.fusion import FusionParams, dplus_model

    assert m1_m2(QuasiPoly(1, ((1, F(-1, 2), 3),))) == (0, -1)
    assert m1_m2(dplus_model(FusionParams(2, 1)))[1] == F(2, 4) + F(1, 2) - 1
    assert admissible_constant_a(catalog("9_43").dplus, CableParams(23, 2))


def test_more_boundary_slope_arithmetic():
    assert cable_boundary_slopes({0}, CableParams(2, 3)) == {0, 6}
    assert cable_boundary_slopes({-2, 6}, CableParams(5, 2)) == {-8, 24, 10}
    assert cable_boundary_slopes({12, 0}, CableParams(25, 2)) == {48, 0, 50}
    assert cable_surface(SurfaceData(0, -3, 1), CableParams(7, 2)) == SurfaceData(0, -13, 1)
