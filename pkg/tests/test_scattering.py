"""Canonical systems, Jost functions, zeros of B and the scattering phase"""
import math

import numpy as np
import pytest

from services import scattering
from utils.errors import AccuracyLossError, DomainError


def test_potential_lower_bound():
    assert scattering.potential_lower_bound() >= -0.25 - 1e-12
    v_plus, v_minus = scattering.potentials(0.0)
    assert (v_plus, v_minus) == (2.0, 6.0)


@pytest.mark.parametrize('a', [0.5, 1.0, 2.0])
@pytest.mark.parametrize('gamma', [0.5, 1.0, 2.0])
def test_ode_residuals(a, gamma):
    reports = scattering.ode_residual_check(a, gamma)
    assert all(r.passed for r in reports), [r.to_dict() for r in reports if not r.passed]


def test_step_bounds():
    with pytest.raises(AccuracyLossError):
        scattering.schrodinger_residual(1.0, 1.0, h=1e-6)
    with pytest.raises(DomainError):
        scattering.dirac_residual(1.0, 1.0, h=0.1)


@pytest.mark.parametrize('s', [0.5 + 1j, 0.3 + 0.2j])
def test_jost_relations(s):
    reports = scattering.jost_relation_check(1.0, s)
    assert all(r.passed for r in reports), [r.to_dict() for r in reports]


def test_jost_diverges_right_of_strip():
    with pytest.raises(AccuracyLossError):
        scattering.jost(1.0, 1.2)


def test_jost_condition_near_zero():
    assert scattering.jost_condition_check(2.0).passed


def test_A_half_three_routes():
    reports = scattering.a_half_routes_check(1.0)
    assert [r.id for r in reports] == ['A_half_bessel', 'A_half_det_ratio', 'A_half_jost']
    assert all(r.passed for r in reports), [r.to_dict() for r in reports]


def test_B_zeros_include_origin_and_are_orthogonal():
    roots = scattering.find_B_zeros(1.0, (-1.0, 10.0))
    assert any(abs(r) < 1e-12 for r in roots)
    positive = [r for r in roots if r > 0]
    assert positive == sorted(positive)
    for root in positive[:3]:
        assert abs(scattering.b_on_line(1.0, root)) < 1e-8
    reports = scattering.b_zero_orthogonality(1.0, positive[:3])
    assert all(r.passed for r in reports)
    assert {r.id for r in reports} == {'b_zero_orthogonality', 'b_zero_flow'}


def test_zero_rows_layout():
    rows = scattering.zero_rows(1.0, [0.0])
    assert len(rows) == 1 and rows[0][:2] == [1.0, 0.0]


def test_zero_range_bounds():
    with pytest.raises(DomainError):
        scattering.find_B_zeros(1.0, (0.0, 60.0))


def test_phase_is_odd_and_matches_unwrapped_argument():
    assert scattering.phase(0.0) == 0.0
    assert scattering.phase(1.7) == pytest.approx(-scattering.phase(-1.7), rel=1e-14)
    gammas = np.linspace(0.0, 20.0, 2001)
    np.testing.assert_allclose(scattering.phase_unwrapped(gammas), scattering.phase(gammas), atol=1e-8)


def test_norm_flow():
    reports = scattering.norm_flow_check(0.5, 2.0)
    assert all(r.passed for r in reports), [r.to_dict() for r in reports]


def test_flow_upper_reaches_tail_bound():
    upper = scattering.flow_upper(0.5)
    assert math.pi * math.exp(-4 * upper) <= scattering.FLOW_TAIL * (1 + 1e-12)


def test_phase_has_no_jumps_on_fine_grid():
    gammas = np.arange(0.0, 10.0 + 1e-9, 0.01)
    values = scattering.phase(gammas)
    assert np.max(np.abs(np.diff(values))) < 0.1
    np.testing.assert_allclose(scattering.phase_unwrapped(gammas), values, atol=1e-8)


def test_b_zero_flow_form():
    positive = [r for r in scattering.find_B_zeros(1.0, (0.5, 20.0)) if r > 0]
    assert len(positive) >= 2
    reports = scattering.b_zero_orthogonality(1.0, positive[:2])
    flow = [r for r in reports if r.id == 'b_zero_flow']
    assert len(flow) == 1
    assert flow[0].params['upper'] == scattering.flow_upper(1.0)
    assert all(r.passed for r in reports), [r.to_dict() for r in reports]
