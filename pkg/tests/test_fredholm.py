"""Fredholm determinants, mu(a) and the log-derivative identities"""
import math

import pytest

from services import fredholm
from utils.errors import DomainError

DETERMINANT_ENDPOINTS = [0.25, 0.5, 1.0, 2.0, 4.0]


@pytest.mark.parametrize('a', DETERMINANT_ENDPOINTS)
def test_determinants_match_closed_forms(a):
    record = fredholm.det_record(a, n=64)
    assert record.det_plus == pytest.approx(math.exp(a - a * a / 2), rel=1e-8)
    assert record.det_minus == pytest.approx(math.exp(-a - a * a / 2), rel=1e-8)
    assert record.det_D == pytest.approx(record.det_plus * record.det_minus, rel=1e-10)


def test_det_at_unit_endpoint():
    assert fredholm.fredholm_det(1.0, '+') == pytest.approx(1.6487212707, rel=1e-8)


def test_empty_interval_determinant():
    assert fredholm.fredholm_det(0.0, '+') == 1.0
    assert fredholm.mu(0.0) == 0.0


def test_det_record_json_keys():
    data = fredholm.det_record(0.5).to_dict()
    assert set(data) == {'a', 'kernel', 'det_plus', 'det_minus', 'closed_plus', 'closed_minus',
                         'abs_err_plus', 'abs_err_minus'}


def test_negative_endpoint_rejected():
    with pytest.raises(DomainError):
        fredholm.fredholm_det(-1.0, '+')


@pytest.mark.parametrize('a', [0.5, 1.0, 2.0])
def test_mu_closed_and_numeric(a):
    assert fredholm.mu(a) == pytest.approx(2 * a, abs=1e-12)
    assert fredholm.mu_numeric(a) == pytest.approx(2 * a, abs=1e-4)


@pytest.mark.parametrize('route, tol', [('closed', 1e-10), ('nystrom', 1e-4)])
def test_gaudin_identities(route, tol):
    reports = fredholm.gaudin_check(1.3, route, tol)
    assert all(r.passed for r in reports), [r.to_dict() for r in reports]


def test_gaudin_unknown_route():
    with pytest.raises(DomainError):
        fredholm.gaudin_check(1.0, route='series')


@pytest.mark.parametrize('a', [0.5, 2.0])
def test_endpoint_flows(a):
    reports = fredholm.endpoint_flow_check(a)
    assert [r.id for r in reports] == ['endpoint_flow_plus', 'endpoint_flow_minus', 'endpoint_flow_difference']
    assert all(r.passed for r in reports)


def test_phi_at_endpoint_from_determinants():
    reports = fredholm.phi_at_endpoint_check(1.0)
    assert all(r.passed for r in reports), [r.to_dict() for r in reports]
