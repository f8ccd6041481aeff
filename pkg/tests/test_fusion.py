from fractions import Fraction as F

import pytest

from jonescable.families import delta_to_dplus
from jonescable.fusion import (
    FusionError,
    FusionParams,
    LatticePoint,
    b_coefficient,
    b_zero_predicted,
    c2_correction,
    case_of,
    delta,
    delta_bruteforce,
    delta_point,
    dplus_model,
    is_admissible,
    q_value,
)
from jonescable.quasipoly import fit


def test_q_value_worked_example():
    # term by term at (m1, m2) = (2, 1), n = 5, (k1, k2) = (1, -1); min{7, 6, 9} = 6
    fp = FusionParams(2, 1)
    assert q_value(fp, 5, 1, -1) == 158
    assert q_value(fp, 0, 0, 0) == 0


def test_q_value_rejects_inadmissible_points():
    assert not is_admissible(5, 6, 0)
    with pytest.raises(FusionError):
        q_value(FusionParams(2, 1), 5, 6, 0)


def test_delta_case_a():
    value, point, case = delta_point(FusionParams(2, 1), 5)
    assert (value, point, case) == (158, LatticePoint(1, -1), "A")
    assert delta_bruteforce(FusionParams(2, 1), 5) == (158, LatticePoint(1, -1))
    assert delta_bruteforce(FusionParams(2, 1), 0) == (0, LatticePoint(0, 0))


def test_case_c1_is_linear():
    fp = FusionParams(-4, -2)
    assert case_of(fp) == "C-1"
    assert delta(fp, 4) == (2 - 4 - 6) * 4 == -32


def test_dispatch_follows_the_inequalities():
    assert case_of(FusionParams(0, 2)) == "B-2"
    assert case_of(FusionParams(-3, 1)) == "B-1"
    assert case_of(FusionParams(1, -2)) == "C-1"
    assert case_of(FusionParams(4, -2)) == "C-2"


def test_excluded_parameters():
    for m2 in (-1, 0):
        with pytest.raises(FusionError):
            FusionParams(3, m2)


def test_dplus_model_example():
    fp = FusionParams(2, 1)
    model = dplus_model(fp)
    assert set(model.a_values) == {F(37, 8)} and set(model.b_values) == {F(-1, 4)}
    assert model.value(6) == delta(fp, 5) + F(5, 2) == F(321, 2)


@pytest.mark.parametrize(
    "m1, m2, b",
    [(2, 1, F(-1, 4)), (-3, -2, F(-13, 2)), (0, 3, 0), (-1, 1, 0), (-4, -2, F(-15, 2))],
)
def test_b_coefficient_branches(m1, m2, b):
    assert b_coefficient(FusionParams(m1, m2)) == b


def test_zero_set():
    assert b_zero_predicted(FusionParams(0, 3)) and b_zero_predicted(FusionParams(-1, 1))
    assert not b_zero_predicted(FusionParams(2, 1))


@pytest.mark.parametrize("m1, m2", [(3, 2), (-2, 3), (1, -3), (-3, -3), (4, -2), (3, -2), (0, 1)])
def test_delta_against_lattice_oracle(m1, m2):
    fp = FusionParams(m1, m2)
    for n in range(0, 16):
        assert delta(fp, n) == delta_bruteforce(fp, n)[0] - c2_correction(fp, n)


@pytest.mark.parametrize("m1, m2", [(3, 2), (-2, 3), (1, -3), (4, -2)])
def test_model_reproduced_by_fit(m1, m2):
    fp = FusionParams(m1, m2)
    model = dplus_model(fp)
    samples = {n: delta(fp, n - 1) + F(n - 1, 2) for n in range(1, 121)}
    got = fit(samples, pi_max=12)
    assert (got.period, got.coeffs) == (model.period, model.coeffs)
    assert got.valid_from <= model.valid_from


def test_half_integer_c2_subcase_needs_the_correction():
    hits = [(m1, m2, n) for m1 in range(-4, 5) for m2 in (-4, -3, -2) for n in range(12)
            if case_of(FusionParams(m1, m2)) == "C-2" and c2_correction(FusionParams(m1, m2), n)]
    assert hits
    m1, m2, n = hits[0]
    fp = FusionParams(m1, m2)
    assert delta(fp, n) < delta_bruteforce(fp, n)[0]


def test_bruteforce_budget():
    with pytest.raises(OverflowError):
        delta_bruteforce(FusionParams(2, 1), 500)


def test_delta_to_dplus_agrees_with_model_on_linear_cases():
    from jonescable.quasipoly import QuasiPoly

    fp = FusionParams(-4, -2)
    lin = QuasiPoly(1, ((0, 2 + fp.m1 + 3 * fp.m2, 0),))
    assert delta_to_dplus(lin).coeffs == dplus_model(fp).coeffs
