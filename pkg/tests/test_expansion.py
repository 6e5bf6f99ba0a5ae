"""Isometric expansion: forward/inverse maps, psi, the Laguerre route and members of K_a"""
import numpy as np
import pytest

from services import expansion
from utils.errors import AccuracyLossError, DomainError


@pytest.fixture(scope='module')
def bump():
    return expansion.gaussian_bump()


def test_parseval(bump):
    report = expansion.parseval_check(bump, 1e-6)
    assert report.passed, report.to_dict()


def test_round_trip(bump):
    report = expansion.round_trip_check(bump, 1e-6)
    assert report.passed, report.to_dict()


def test_pair_lives_on_twice_the_support(bump):
    pair = expansion.forward(bump)
    assert pair.f.grid.hi == pytest.approx(2 * bump.grid.hi)
    header, rows = pair.csv_rows()
    assert header == ['y', 'f_re', 'g_re']
    assert len(rows) == pair.f.grid.n


def test_h_image_is_negated_g(bump):
    reports = expansion.involution_check(bump, [0.5, 1.5, 3.0, 5.0], 1e-5)
    assert all(r.passed for r in reports), [r.to_dict() for r in reports if not r.passed]


def test_support_violation():
    k = expansion.sample(lambda x: np.ones_like(x), 1.0, 32)
    with pytest.raises(DomainError):
        expansion.forward(k)


def test_exponential_is_invariant():
    reports = expansion.exponential_invariance_check(40.0, 1e-6)
    assert all(r.passed for r in reports), [r.to_dict() for r in reports]


def test_psi_closed_form_at_unit_rate():
    x = np.linspace(0.0, 3.0, 5)
    np.testing.assert_allclose(expansion.psi_closed_exponential(1.0, x), np.exp(-x))
    with pytest.raises(DomainError):
        expansion.psi_closed_exponential(0.5, x)


def test_psi_isometry():
    reports = expansion.psi_isometry_check(2.0, 1e-6)
    assert all(r.passed for r in reports), [r.to_dict() for r in reports]


def test_laguerre_route_agrees_with_forward_map(bump):
    reports = expansion.laguerre_agreement_check(bump, tol=1e-4)
    assert all(r.passed for r in reports), [r.to_dict() for r in reports]


def test_laguerre_truncation_limits(bump):
    with pytest.raises(DomainError):
        expansion.laguerre_oracle(bump, 0)
    with pytest.raises(DomainError):
        expansion.laguerre_oracle(bump, 201)
    with pytest.raises(AccuracyLossError):
        expansion.laguerre_oracle(bump, 4)


def test_half_sum_transform_of_equal_components():
    g1 = expansion.sample(lambda x: np.sin(x) ** 2, 2.0, 32)
    pair = expansion.half_sum_transform(g1, g1)
    y = np.array([0.4, 2.2, 3.6])
    np.testing.assert_allclose(pair.f.evaluate(y), np.sin(y / 2) ** 2, atol=1e-12)
    np.testing.assert_allclose(pair.g.evaluate(y), 0.0, atol=1e-12)


def test_gridfn_from_samples():
    k = expansion.gridfn_from_samples([0.0, 1.0, 2.0], [0.0, 1.0, 0.0], n=16)
    assert k.grid.hi == 2.0
    assert float(k.evaluate(np.array([0.5]))[0]) == pytest.approx(0.5)
    with pytest.raises(DomainError):
        expansion.gridfn_from_samples([-1.0, 1.0], [0.0, 0.0])


def test_smooth_cutoff_shape():
    x = np.linspace(0.0, 3.0, 301)
    c = expansion.smooth_cutoff(x, 1.0, 2.0)
    assert np.all(c[x <= 1.0] == 1.0)
    assert np.all(c[x >= 2.0] == 0.0)
    assert np.all(np.diff(c) <= 0.0)


def test_ka_laplace_transform():
    assert expansion.ka_laplace(1.0, 1.0, 1.0) == pytest.approx(expansion.ka_laplace_closed(1.0, 1.0, 1.0),
                                                                abs=1e-5)


def test_ka_element_vanishes_before_a():
    values = expansion.ka_element_values(1.0, 2.0, np.array([0.2, 0.9, 1.0]))
    np.testing.assert_array_equal(values, 0.0)


def test_ka_checks():
    reports = expansion.ka_checks()
    assert {r.id for r in reports} == {'ka_laplace', 'ka_membership', 'ka_reciprocal', 'ka_pair_support'}
    assert all(r.passed for r in reports), [r.to_dict() for r in reports if not r.passed]


def test_ka_domain_guards():
    with pytest.raises(DomainError):
        expansion.ka_forward(1.0, 1.0, [2.5])
    with pytest.raises(DomainError):
        expansion.ka_transform(1.0, 1.0, [1.0])


def test_inverse_recovers_input(bump):
    back = expansion.inverse(expansion.forward(bump))
    assert back.grid.hi == pytest.approx(bump.grid.hi)
    x = np.array([2.5, 3.0, 3.4])
    np.testing.assert_allclose(back.evaluate(x), bump.evaluate(x), atol=1e-6)


def test_psi_fixes_unit_exponential():
    f = expansion.sample(lambda y: np.exp(-y), 40.0, 128)
    x = np.array([0.5, 1.0, 2.0])
    np.testing.assert_allclose(expansion.psi_map(f, support=4.0).evaluate(x), np.exp(-x), atol=1e-6)


def test_make_Ka_element():
    k = expansion.make_Ka_element(1.0, 2.0, n=32)
    assert k.grid.lo == 1.0
    assert float(k.evaluate(np.array([0.5]))[0]) == 0.0
    start = float(k.evaluate(np.array([1.0 + 1e-9]))[0])
    assert start == pytest.approx(np.exp(-2.5), rel=1e-6)


def test_psi_halves_the_left_support_point():
    f = expansion.sample(lambda y: (y - 2.0) * (4.0 - y), 4.0, 64, lo=2.0)
    image = expansion.psi_map(f, support=2.0, n=200)
    np.testing.assert_array_equal(image.evaluate(np.array([0.2, 0.6, 0.95])), 0.0)
    assert abs(float(image.evaluate(np.array([1.1]))[0])) > 1e-3
    nodes = image.grid.nodes
    leftmost = nodes[np.abs(image.values) > 1e-12][0]
    assert leftmost == pytest.approx(0.5 * f.grid.lo, abs=0.05)
