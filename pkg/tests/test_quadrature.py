"""Gauss-Legendre panels, Euler-averaged zero panels and rotated Bessel-product tails"""
import math

import numpy as np
import pytest
from scipy import integrate, special

from services import quadrature
from utils.errors import ConvergenceError


def test_panel_integrate_exponential():
    assert quadrature.panel_integrate(np.exp, 0.0, 1.0, width=0.25) == pytest.approx(math.e - 1.0, rel=1e-14)


def test_panel_nodes_weights_sum_to_length():
    x, wx = quadrature.panel_nodes(1.0, 4.0, 3, order=8)
    assert wx.sum() == pytest.approx(3.0, rel=1e-14)
    assert np.all(np.diff(x) > 0)


def test_log_mellin_head_handles_endpoint_singularity():
    value = quadrature.log_mellin_head(lambda x: np.ones_like(x), 1.0, -0.5 + 0j)
    assert value == pytest.approx(2.0, rel=1e-12)


def test_log_mellin_head_rejects_divergent_exponent():
    with pytest.raises(ConvergenceError):
        quadrature.log_mellin_head(lambda x: x, 1.0, -1.5 + 0j)


def test_euler_average_alternating_harmonic():
    terms = np.array([(-1) ** k / (k + 1) for k in range(60)])
    value, error = quadrature.euler_average(np.cumsum(terms))
    assert value == pytest.approx(math.log(2.0), abs=1e-12)
    assert error < 1e-10


def test_zero_panel_sum_bessel_j0_integral():
    breakpoints = np.concatenate([[0.0], special.jn_zeros(0, 200)])
    value, _ = quadrature.zero_panel_sum(special.j0, breakpoints, tol=1e-6)
    assert value == pytest.approx(1.0, abs=1e-8)


def test_zero_panel_sum_reports_failure_on_tight_budget():
    # Non-alternating integrand: averaging cannot converge
    breakpoints = np.arange(0.0, 40.0)
    with pytest.raises(ConvergenceError):
        quadrature.zero_panel_sum(lambda x: 1.0 / (1.0 + x), breakpoints, tol=1e-14)


def test_bessel_product_tail_zero_beat():
    # int_0^inf J_1(x)^2 / x dx = 1/2
    v0 = 5.0
    head, _ = integrate.quad(lambda x: special.j1(x) ** 2 / x, 0.0, v0, epsabs=1e-14, epsrel=1e-14)
    tail = quadrature.bessel_product_tail(lambda v: 1.0 / v, lambda v: v, lambda v: v, v0, beat=0.0)
    assert head + tail == pytest.approx(0.5, abs=1e-9)


def test_bessel_product_tail_nonzero_beat():
    # Weber-Schafheitlin: int_0^inf J_1(2x) J_1(x) / x dx = 1/4
    v0 = 5.0
    head, _ = integrate.quad(lambda x: special.j1(2 * x) * special.j1(x) / x, 0.0, v0,
                             epsabs=1e-14, epsrel=1e-14, limit=200)
    tail = quadrature.bessel_product_tail(lambda v: 1.0 / v, lambda v: 2 * v, lambda v: v, v0, beat=1.0)
    assert head + tail == pytest.approx(0.25, abs=1e-9)
