"""Grids, the H-transform on sampled functions and the phi/psi solvers"""
import numpy as np
import pytest

from models import GridFn
from services import discretize, expansion
from utils.errors import DomainError


def test_grid_nodes_and_weights():
    grid = discretize.make_grid(2.0, 32)
    assert grid.weights.sum() == pytest.approx(2.0, rel=1e-14)
    assert np.all(np.diff(grid.nodes) > 0)
    assert 0.0 < grid.nodes[0] and grid.nodes[-1] < 2.0


def test_grid_size_bounds():
    with pytest.raises(DomainError):
        discretize.make_grid(1.0, 2)
    with pytest.raises(DomainError):
        discretize.make_grid(-1.0, 16)


@pytest.mark.parametrize('a', [0.5, 1.0, 2.0])
@pytest.mark.parametrize('sign', ['+', '-'])
def test_solve_phi_matches_closed_form(a, sign):
    grid = discretize.make_grid(a, 64)
    numeric = discretize.solve_phi(a, sign, grid)
    closed = discretize.closed_phi_fn(a, sign, grid)
    assert np.max(np.abs(numeric.values - closed.values)) <= 1e-8


@pytest.mark.parametrize('a', [0.5, 1.0, 2.0])
def test_phi_endpoint_values(a):
    plus = discretize.solve_phi(a, '+', n=64)
    minus = discretize.solve_phi(a, '-', n=64)
    assert float(discretize.interpolate(plus, a)) == pytest.approx(1.0 - a, abs=1e-8)
    assert float(discretize.interpolate(minus, a)) == pytest.approx(1.0 + a, abs=1e-8)


def test_closed_phi_rejects_bad_sign():
    with pytest.raises(DomainError):
        discretize.closed_phi(1.0, '*', 0.5)


def test_apply_h_to_exponential_is_self_reciprocal():
    x = np.array([0.5, 2.0])
    values = discretize.apply_H_to(lambda y: np.exp(-y), x, decay=1.0)
    np.testing.assert_allclose(values, np.exp(-x), atol=1e-8)


def test_nystrom_spectrum():
    op = discretize.nystrom(1.0, 48)
    magnitudes = np.abs(op.eigenvalues)
    assert np.all(np.diff(magnitudes) <= 1e-15)
    assert op.spectral_radius < 1.0
    np.testing.assert_allclose(op.matrix, op.matrix.T)


def test_nystrom_custom_kernel_requires_function():
    with pytest.raises(DomainError):
        discretize.nystrom(1.0, 16, kernel_id='custom')
    op = discretize.nystrom(1.0, 16, kernel_id='custom', kernel=lambda u: np.zeros_like(u))
    assert op.det(+1) == pytest.approx(1.0)


def test_self_adjointness_gap():
    gap = discretize.self_adjointness_gap(lambda x: x * (3 - x) ** 2, lambda x: np.sin(x) * (3 - x), 3.0)
    assert gap < 1e-12


def test_solve_psi_satisfies_equation_off_grid():
    a = 1.0
    psi = discretize.solve_psi(a, '+', n=64)
    x = np.array([0.3, 0.77])
    # psi + H_a psi = 1 at off-grid points, H_a by a finer rule
    fine = discretize.make_grid(a, 128)
    h_psi = discretize.standard_kernel(np.outer(x, fine.nodes)) @ (fine.weights * psi.evaluate(fine.nodes))
    np.testing.assert_allclose(psi.evaluate(x) + h_psi, 1.0, atol=1e-10)


def test_apply_H_on_sampled_exponential():
    grid = discretize.make_grid(40.0, 128)
    f = GridFn(grid, np.exp(-grid.nodes))
    x = np.array([0.0, 0.5, 2.0])
    np.testing.assert_allclose(discretize.apply_H(f, x), np.exp(-x), atol=1e-8)


def test_rs_means_match_bessel_i():
    r, s = discretize.rs_means(1.0)
    assert r == pytest.approx(2.2795853023360673, rel=1e-8)
    assert s == pytest.approx(1.5906368546373291, rel=1e-8)


@pytest.mark.parametrize('sign, direction', [('+', -1.0), ('-', 1.0)])
@pytest.mark.parametrize('a', [0.5, 1.0, 2.0])
def test_psi_endpoint_is_one_minus_phi_integral(a, sign, direction):
    grid = discretize.make_grid(a, 64)
    psi = discretize.solve_psi(a, sign, grid)
    phi = discretize.solve_phi(a, sign, grid)
    endpoint = float(np.real(discretize.interpolate(psi, a)))
    assert endpoint == pytest.approx(1.0 + direction * float(np.real(grid.integrate(phi.values))), abs=1e-10)


def test_apply_H_is_an_involution():
    f = expansion.sample(lambda y: (1.0 + y) * np.exp(-2.0 * y), 30.0, 256)
    # H f = (3/4 - x/8) e^{-x/2} is negligible beyond 80
    image = expansion.sample(lambda x: discretize.apply_H(f, x), 80.0, 400)
    x = np.array([0.3, 1.0, 2.5, 4.0])
    np.testing.assert_allclose(discretize.apply_H(image, x), (1.0 + x) * np.exp(-2.0 * x), atol=1e-6)
