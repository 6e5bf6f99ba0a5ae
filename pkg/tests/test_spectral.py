"""Mellin data, the reproducing kernel and evaluator norms"""
import math
from types import SimpleNamespace

import pytest

from services import spectral
from utils.errors import DomainError, PoleError


def test_E_half_closed_form():
    point = spectral.spectral_point(1.0, 0.5)
    assert point.E == pytest.approx(math.sqrt(math.pi) * math.exp(-2.0), rel=1e-12)


@pytest.mark.parametrize('s', [0.5 + 2j, 0.3 - 0.7j, 1.5])
def test_E_is_A_minus_iB(s):
    point = spectral.spectral_point(0.8, s)
    assert abs(point.E - (point.A - 1j * point.B)) <= 1e-12 * abs(point.E)


def test_spectral_csv_row_layout():
    row = spectral.spectral_point(1.0, 0.5 + 1j).csv_row()
    assert len(row) == 9
    assert row[:3] == [1.0, 0.5, 1.0]


@pytest.mark.parametrize('gamma', [0.0, 1.0, 7.5])
def test_chi_unimodular_on_critical_line(gamma):
    assert abs(spectral.chi(0.5 + 1j * gamma)) == pytest.approx(1.0, rel=1e-12)


def test_chi_pole():
    with pytest.raises(PoleError):
        spectral.chi(2.0)


@pytest.mark.parametrize('s', [0.8 + 0.5j, 0.9 - 1j, 0.85 + 2j])
def test_chi_integral(s):
    report = spectral.chi_integral_check(s)
    assert report.passed, report.to_dict()


def test_chi_integral_strip():
    with pytest.raises(DomainError):
        spectral.chi_integral(0.6)


@pytest.mark.parametrize('s', [0.8 + 0.5j, 1.3 + 0j])
def test_g_s_series_against_quadrature(s):
    assert abs(spectral.g_s(1.0, s, 1.5) - spectral.g_s_quadrature(1.0, s, 1.5)) <= 1e-8


def test_g_s_integer_limit_is_continuous():
    exact = spectral.g_s(1.0, 1.0, 0.7)
    nearby = spectral.g_s(1.0, 1.0 + 1e-6, 0.7)
    assert abs(exact - nearby) <= 1e-4


def test_g_s_integer_limit_against_quadrature():
    assert abs(spectral.g_s(1.0, 1.0, 0.7) - spectral.g_s_quadrature(1.0, 1.0, 0.7)) <= 1e-8


@pytest.mark.parametrize('a, s', [(1.0, 0.75 + 0j), (0.5, 0.6 + 2j)])
def test_mellin_E_routes_agree(a, s):
    closed = spectral.mellin_E(a, s)
    assert abs(spectral.mellin_E_quadrature(a, s) - closed) <= 1e-7 * abs(closed)


@pytest.mark.parametrize('s, z', [(0.6, 0.7), (0.5 + 0.3j, 0.5 - 0.3j)])
def test_rep_kernel_against_double_integral(s, z):
    closed = spectral.rep_kernel(1.0, s, z)
    oracle = spectral.rep_kernel_oracle(1.0, s, z)
    assert abs(closed - oracle) <= 1e-6 * abs(oracle)


def test_rep_kernel_symmetric():
    s, z = 0.4 + 0.2j, 0.9 - 1.1j
    assert spectral.rep_kernel(1.0, s, z) == pytest.approx(spectral.rep_kernel(1.0, z, s), rel=1e-12)


@pytest.mark.parametrize('a', [0.5, 1.0, 2.0])
def test_evaluator_norm_half(a):
    closed = spectral.evaluator_norm_half(a)
    assert spectral.evaluator_norm_half_quadrature(a) == pytest.approx(closed, rel=1e-8)
    # X_a(1/2, 1/2) carries the factor pi of the Mellin-side normalization
    assert spectral.evaluator_norm(a, 0.5) == pytest.approx(math.pi * closed, rel=1e-6)


def test_evaluator_norm_flow():
    report = spectral.evaluator_norm_flow_check(0.5, 2.0, 0.6 + 1j)
    assert report.passed, report.to_dict()


def test_mellin_functional_equation():
    report = spectral.mellin_functional_check(1.5, 0.4 + 0.7j)
    assert report.passed, report.to_dict()


def test_mu_from_spectral_normalization():
    reports = spectral.mu_from_spectral(1.0)
    assert len(reports) == 5
    assert reports[-1].id == 'mu_normalization_monotone'
    assert all(r.passed for r in reports)


def test_mu_normalization_flags_growing_gap(monkeypatch):
    # -iB/A drifts away from 1 as sigma grows
    monkeypatch.setattr(spectral, 'spectral_point',
                        lambda a, s: SimpleNamespace(A=1.0, B=1j * (1.0 + 1e-3 * s), E=1.0))
    reports = spectral.mu_from_spectral(1.0)
    by_id = {r.id: r for r in reports}
    assert all(r.passed for r in reports if r.id == 'mu_normalization_B_over_A')
    assert not by_id['mu_normalization_monotone'].passed
    assert by_id['mu_normalization_monotone'].abs_err == pytest.approx(0.02)


def test_oracle_domain():
    with pytest.raises(DomainError):
        spectral.rep_kernel_oracle(1.0, 3.0, 0.5)
