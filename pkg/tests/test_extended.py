"""Extended spaces: closed-form scalars, determinants, mu_ext, Y-kernel and norms"""
import numpy as np
import pytest
from scipy import special

from services import discretize, extended, spectral
from utils.errors import DomainError


def test_state_closed_forms():
    state = extended.ext_state(1.0)
    r, s = special.i0(2.0), special.i1(2.0)
    assert state.r == pytest.approx(r, rel=1e-14)
    assert state.s == pytest.approx(s, rel=1e-14)
    assert state.p == pytest.approx(r * r - s * s, rel=1e-12)
    assert state.q == pytest.approx(0.5 * (r * r - 1.0), rel=1e-12)
    assert state.alpha * (state.p ** 2 - state.q ** 2) == pytest.approx(state.p, rel=1e-12)


def test_small_endpoint_q_without_cancellation():
    state = extended.ext_state(1e-4)
    # q = (I_0(2a)^2 - 1)/2 ~ a^2
    assert state.q == pytest.approx(1e-8, rel=1e-6)


def test_endpoint_overflow_guard():
    with pytest.raises(DomainError):
        extended.ext_state(200.0)


@pytest.mark.parametrize('sign', ['+', '-'])
def test_ext_det_against_nystrom(sign):
    assert extended.ext_det_nystrom(1.0, sign, n=64) == pytest.approx(extended.ext_det(1.0, sign), rel=1e-6)


def test_ext_kernel_series_matches_closed_form_at_cutoff():
    below = extended.ext_kernel(np.array([1.0 - 1e-9]))[0]
    above = extended.ext_kernel(np.array([1.0 + 1e-9]))[0]
    assert below == pytest.approx(above, abs=1e-12)


def test_ext_kernel_rejects_negative_argument():
    with pytest.raises(DomainError):
        extended.ext_kernel(-0.5)


def test_mu_ext_asymptotics():
    assert abs(extended.ext_state(10.0).mu_ext - 18.0) <= 0.15
    assert abs(extended.ext_state(40.0).mu_ext - 78.0) <= 0.05
    # 2a - 2 - 1/a
    assert abs(extended.ext_state(10.0).mu_ext - 17.9) <= 0.05


@pytest.mark.parametrize('s, z', [(0.6, 0.7), (0.3 + 1j, 0.8 - 0.5j)])
def test_y_kernel_equals_ratio_form(s, z):
    direct = extended.y_kernel(1.0, s, z)
    ratio = extended.y_kernel_ratio(1.0, s, z)
    assert abs(direct - ratio) <= 1e-8 * abs(ratio)


def test_y_kernel_ratio_diagonal():
    with pytest.raises(DomainError):
        extended.y_kernel_ratio(1.0, 0.3, 0.7)


def test_t_function_at_one():
    assert extended.t_function(1.3, 1.0) == pytest.approx(1.0, rel=1e-10)


@pytest.mark.parametrize('a', [0.5, 1.0])
def test_ext_norm_half(a):
    quadrature, closed = extended.ext_norm_half(a)
    assert quadrature == pytest.approx(closed, rel=1e-6)


@pytest.mark.parametrize('a', [0.5, 1.0])
def test_state_against_nystrom(a):
    reports = extended.ext_state_check(a)
    assert all(r.passed for r in reports), [r.to_dict() for r in reports if not r.passed]


def test_relations():
    reports = extended.ext_relations_check(0.8)
    assert all(r.passed for r in reports), [r.to_dict() for r in reports if not r.passed]


@pytest.mark.parametrize('z', [0.5 + 1j, 0.3 + 0j])
def test_dirac_residual(z):
    residual = extended.ext_dirac_residual(1.0, z)
    assert residual.residual_A <= 1e-6
    assert residual.residual_B <= 1e-6


def test_transform_conjugation_and_invariant():
    reports = extended.ext_transform_check(1.0, [0.5, 1.0, 2.0])
    assert len(reports) == 6
    assert all(r.passed for r in reports), [r.to_dict() for r in reports if not r.passed]


def test_ext_spectral_at_half():
    state = extended.ext_state(1.0)
    _, _, e_ext = extended.ext_spectral(1.0, 0.5)
    e_half = spectral.spectral_point(1.0, 0.5).E
    assert e_ext == pytest.approx(0.25 * (state.p + state.q) / (state.p - state.q) * e_half, rel=1e-10)


def test_ext_spectral_parity():
    z = 0.3 + 0.7j
    a_z, b_z, e_z = extended.ext_spectral(1.0, z)
    a_w, b_w, _ = extended.ext_spectral(1.0, 1 - z)
    assert abs(a_z - a_w) <= 1e-10 * abs(a_z)
    assert abs(b_z + b_w) <= 1e-10 * abs(b_z)
    assert abs(e_z - (a_z - 1j * b_z)) <= 1e-12 * abs(e_z)


def test_nystrom_state_matches_closed_form():
    closed, numeric = extended.ext_state(0.8), extended.ext_state_nystrom(0.8)
    for name in ('r', 's', 'p', 'q'):
        assert getattr(numeric, name) == pytest.approx(getattr(closed, name), rel=1e-6)


def test_nystrom_ext_operator_is_an_involution():
    # L(e^{-x} - 4e^{-2x} + 3e^{-3x}) with L f = f - (1/x) int_0^x f; its image decays like e^{-x/3}
    def f(x):
        return sum(c * (np.exp(-lam * x) + np.expm1(-lam * x) / (lam * x))
                   for c, lam in ((1.0, 1.0), (-4.0, 2.0), (3.0, 3.0)))

    op = discretize.nystrom(60.0, 400, 'extended')
    x = op.grid.nodes
    root_w = np.sqrt(op.grid.weights)
    back = op.matrix @ (op.matrix @ (root_w * f(x))) / root_w
    interior = x < 20.0
    assert np.max(np.abs(back[interior] - f(x[interior]))) <= 1e-5
