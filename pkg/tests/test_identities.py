"""Identity catalog: draws, per-case verification and flagged failures"""
import math

import pytest

from models import IdentityCase
from services import identities, specfun
from utils.errors import DomainError, PoleError

CATALOG_IDS = [key for key, _ in identities.list_catalog()]


def test_catalog_is_sorted_and_described():
    assert CATALOG_IDS == sorted(CATALOG_IDS)
    assert {'group_sum', 'group_law', 'weber_sonine', 'mellin_chi', 'jump_d', 'jump_e',
            'boundary_E', 'boundary_A', 'boundary_B'} <= set(CATALOG_IDS)
    assert all(text for _, text in identities.list_catalog())


def test_draws_are_deterministic():
    first = identities.draw_cases('group_sum', count=3, seed=7)
    second = identities.draw_cases('group_sum', count=3, seed=7)
    assert [c.params for c in first] == [c.params for c in second]
    other = identities.draw_cases('group_sum', count=3, seed=8)
    assert [c.params for c in first] != [c.params for c in other]


def test_draws_carry_profile_tolerance():
    case = identities.draw_cases('weber_sonine', count=1, seed=1)[0]
    assert case.tol == 1e-6


@pytest.mark.parametrize('identity_id', CATALOG_IDS)
def test_catalog_identity_holds(identity_id):
    for case in identities.draw_cases(identity_id, count=2, seed=20240101, profile='fast'):
        report = identities.verify(case, 'fast')
        assert report.passed, report.to_dict()


@pytest.mark.parametrize('c', [0.5, 2.0, 3.7])
def test_weber_sonine_closed_value(c):
    assert identities.weber_sonine_integral(c) == pytest.approx(0.5 * min(c, 1 / c), abs=1e-8)


def test_group_sum_fixed_point():
    report = identities.verify(IdentityCase(id='group_sum', params={'a': 2.0, 'b': 0.5, 'x': 1.3}))
    assert report.passed
    assert report.abs_err <= 1e-7


def test_sonine_self_convolution_at_zero():
    # int_0^inf J_1(2 sqrt y)^2 / y dy = 1
    assert identities.correlation(1.0, 1.0, 0.0) == pytest.approx(1.0, abs=1e-7)


def test_jump_outside_support_vanishes():
    report = identities.verify(IdentityCase(id='jump_d', params={'x': 1.0, 'y': 3.0, 'eps': 1e-5}))
    assert report.rhs.re == 0.0
    assert report.passed


def test_branch_guard():
    with pytest.raises(DomainError):
        identities.hyperfunction_d(2.0 + 1e-9j, 1.0)


def test_evaluation_error_is_flagged_not_raised():
    case = IdentityCase(id='boundary_E', params={'a': 1.0, 'center': 1.5, 'width': 0.5, 'eps': 0.01})
    report = identities.verify(case)
    assert not report.passed
    assert report.note == 'DOMAIN_ERROR'
    assert math.isinf(report.abs_err)


def test_unknown_identity():
    with pytest.raises(DomainError):
        identities.verify(IdentityCase(id='no_such_identity'))


def test_e_is_z_derivative_of_d():
    z, y, h = -1.0 + 0.5j, 2.0, 1e-5
    derivative = (identities.hyperfunction_d(z + h, y) - identities.hyperfunction_d(z - h, y)) / (2 * h)
    assert abs(identities.hyperfunction_e(z, y) - derivative) <= 1e-7 * abs(derivative)
    assert identities.hyperfunction_e(z, 0.0) == pytest.approx(-1.0 / (2 * z) / (2j * math.pi))


def test_boundary_E_splits_into_A_and_B():
    x, eps = 0.4, 1e-4
    total = identities.boundary_E_a(1.0, x, eps, 'E')
    parts = identities.boundary_E_a(1.0, x, eps, 'A') + identities.boundary_E_a(1.0, x, eps, 'B')
    assert total == pytest.approx(parts, rel=1e-12)
    with pytest.raises(DomainError):
        identities.boundary_E_a(1.0, x, 0.0)


def test_d_accepts_zero_y_as_a_pole():
    z = -1.0 + 0.5j
    with pytest.raises(PoleError):
        identities.hyperfunction_d(z, 0.0)
    with pytest.raises(DomainError):
        identities.hyperfunction_d(z, -0.1)
    # log growth as y -> 0
    small = identities.hyperfunction_d(z, 1e-8)
    smaller = identities.hyperfunction_d(z, 1e-10)
    assert abs(smaller) > abs(small) > abs(identities.hyperfunction_d(z, 1.0))


@pytest.mark.parametrize('a, b', [(1.0, 1.0), (2.0, 0.5)])
@pytest.mark.parametrize('x', [0.1, 1.0, 5.0])
def test_group_law_pointwise(a, b, x):
    report = identities.verify(IdentityCase(id='group_law', params={'a': a, 'b': b, 'x': x}))
    assert report.passed, report.to_dict()
    assert report.lhs.re == pytest.approx(float(specfun.bessel_f(a + b, x)))
