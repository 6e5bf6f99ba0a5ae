"""Special functions against closed forms and mpmath"""
import math
from concurrent.futures import ThreadPoolExecutor

import mpmath
import numpy as np
import pytest
from scipy import special

from services import specfun
from utils.errors import DomainError, PoleError


@pytest.mark.parametrize('x', [0.3, 1.0, 4.0])
def test_k_half_order_closed_form(x):
    value = specfun.bessel_k_complex(0.5 + 0j, x)
    assert value == pytest.approx(math.sqrt(math.pi / (2 * x)) * math.exp(-x), rel=1e-12)


@pytest.mark.parametrize('s, x', [(0.5 + 3j, 1.0), (0.3 - 1.5j, 2.0), (0.5 + 20j, 2.0)])
def test_k_complex_order_matches_mpmath(s, x):
    expected = complex(mpmath.besselk(s, x))
    assert abs(specfun.bessel_k_complex(s, x) - expected) <= 1e-9 * max(1.0, abs(expected))


def test_k_symmetric_in_order():
    s = 0.2 + 2.5j
    assert specfun.bessel_k_complex(s, 1.5) == pytest.approx(specfun.bessel_k_complex(-s, 1.5), rel=1e-10)


def test_k_recurrence():
    assert specfun.bessel_k_recurrence_residual(0.4 + 2j, 1.0) < 1e-9


def test_k_rejects_bad_arguments():
    with pytest.raises(DomainError):
        specfun.bessel_k_complex(0.5, -1.0)
    with pytest.raises(DomainError):
        specfun.bessel_k_complex(0.5 + 150j, 1.0)


def test_gamma_pole():
    with pytest.raises(PoleError):
        specfun.gamma_complex(-2.0)
    assert specfun.gamma_complex(0.5) == pytest.approx(math.sqrt(math.pi))


def test_rgamma_vanishes_at_poles():
    assert specfun.rgamma_complex(-3.0) == 0


def test_e1():
    assert specfun.exp_integral_e1(1.0) == pytest.approx(float(mpmath.e1(1.0)), rel=1e-14)
    with pytest.raises(DomainError):
        specfun.exp_integral_e1(0.0)


@pytest.mark.parametrize('n', [0, 1, 5, 40])
def test_laguerre_recurrence_matches_scipy(n):
    x = np.linspace(0.0, 10.0, 7)
    np.testing.assert_allclose(specfun.laguerre(n, x), special.eval_laguerre(n, x), rtol=1e-10, atol=1e-12)


def test_laguerre_table_rows_match_single_degree():
    x = np.array([0.5, 2.0])
    table = specfun.laguerre_table(6, x)
    np.testing.assert_allclose(table[6], specfun.laguerre(6, x), rtol=1e-13)


def test_laguerre_degree_bounds():
    with pytest.raises(DomainError):
        specfun.laguerre(201, 1.0)


def test_bessel_j_rejects_negative_argument():
    with pytest.raises(DomainError):
        specfun.bessel_j01(0, -0.1)


def test_continued_pair_is_continuous_at_endpoint():
    a = 1.5
    x = np.array([a - 1e-9, a, a + 1e-9])
    c0, c1 = specfun.continued_bessel_pair(a, x)
    np.testing.assert_allclose(c0, 1.0, atol=1e-8)
    np.testing.assert_allclose(c1, 1.0, atol=1e-8)


def test_bessel_f_value_at_origin_and_reflection():
    assert specfun.bessel_f(2.0, 0.0) == pytest.approx(2.0)
    assert specfun.bessel_f(2.0, -1.0) == 0.0
    assert specfun.bessel_f(-2.0, -0.7) == pytest.approx(specfun.bessel_f(2.0, 0.7))


@pytest.mark.parametrize('order, x, expected', [(0, 0.0, 1.0), (0, 2.0, 2.2795853023360673),
                                                (1, 2.0, 1.5906368546373291)])
def test_bessel_i01(order, x, expected):
    assert specfun.bessel_i01(order, x) == pytest.approx(expected, rel=1e-12)


def test_bessel_i01_contract():
    with pytest.raises(DomainError):
        specfun.bessel_i01(2, 1.0)
    with pytest.raises(DomainError):
        specfun.bessel_i01(0, -0.1)


DRAW_SEEDS = [11, 23, 37, 41]
DRAWS_PER_SEED = 25


@pytest.mark.parametrize('seed', DRAW_SEEDS)
def test_gamma_functional_equation_random(seed):
    rng = np.random.default_rng(seed)
    for _ in range(DRAWS_PER_SEED):
        s = complex(rng.uniform(-3.5, 8.0), rng.choice([-1, 1]) * rng.uniform(0.1, 8.0))
        lhs = specfun.gamma_complex(s + 1)
        rhs = s * specfun.gamma_complex(s)
        assert abs(lhs - rhs) <= 1e-12 * abs(rhs), s


@pytest.mark.parametrize('seed', DRAW_SEEDS)
def test_k_order_reflection_random(seed):
    rng = np.random.default_rng(seed)
    for _ in range(DRAWS_PER_SEED):
        s = complex(rng.uniform(-2.0, 2.0), rng.uniform(-20.0, 20.0))
        x = float(rng.uniform(0.5, 5.0))
        lhs = specfun.bessel_k_complex(s, x)
        rhs = specfun.bessel_k_complex(-s, x)
        assert abs(lhs - rhs) <= 1e-10 * abs(rhs), (s, x)


@pytest.mark.parametrize('seed', DRAW_SEEDS)
def test_bessel_derivative_relation_random(seed):
    """x d/dx [sqrt(ax) J1(2 sqrt(ax))] = a x J0(2 sqrt(ax)) by central differences"""
    rng = np.random.default_rng(seed)
    h = 1e-5

    def g(a, x):
        return math.sqrt(a * x) * specfun.bessel_j01(1, 2 * math.sqrt(a * x))

    for _ in range(DRAWS_PER_SEED):
        a = float(rng.uniform(0.1, 5.0))
        x = float(rng.uniform(0.1, 5.0))
        lhs = x * (g(a, x + h) - g(a, x - h)) / (2 * h)
        rhs = a * x * specfun.bessel_j01(0, 2 * math.sqrt(a * x))
        assert lhs == pytest.approx(rhs, abs=1e-6), (a, x)


def test_k_mpmath_fallback_is_thread_safe(monkeypatch):
    # every complex order goes through the mpmath branch
    monkeypatch.setattr(specfun, 'K_CANCELLATION_LIMIT', -1.0)
    dps = mpmath.mp.dps
    orders = [complex(0.1 * k, 0.5 + 1.5 * k) for k in range(12)]
    points = [(s, x) for s in orders for x in (0.5, 1.0, 3.0)]
    serial = [specfun.bessel_k_complex(s, x) for s, x in points]

    def evaluate(point):
        s, x = point
        return specfun.bessel_k_complex(s, x)

    with ThreadPoolExecutor(max_workers=8) as pool:
        for _ in range(4):
            assert list(pool.map(evaluate, points)) == serial
    assert mpmath.mp.dps == dps
    for (s, x), value in zip(points, serial):
        expected = complex(mpmath.besselk(s, x))
        assert abs(value - expected) <= 1e-10 * abs(expected)
