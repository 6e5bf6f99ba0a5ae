"""
Identities Service - catalog of Bessel integral identities and hyperfunction jumps

Every catalog entry pairs a parameter sampler with an evaluator returning the two
sides of one identity. `verify` turns a concrete case into a CheckReport; errors
raised while evaluating a case are recorded on the report instead of propagating.
"""
import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Tuple

import numpy as np
from scipy import integrate, special

from config import get_tolerance
from models import CheckReport, IdentityCase
from utils.errors import DomainError, LabError, PoleError
from utils.validators import validate_finite, validate_nonnegative, validate_positive
from .discretize import closed_phi
from .quadrature import bessel_product_tail, panel_integrate
from .spectral import chi, chi_integral
from .specfun import bessel_f, continued_bessel_pair, jinc

logger = logging.getLogger(__name__)

BRANCH_GUARD = 1e-6
DEFAULT_EPS = 1e-5
FD_STEP = 1e-3
# Minimal separation of sqrt(a), sqrt(b) for a rotated-contour correlation tail
MIN_BEAT = 0.1
PANEL_WIDTH = 0.25
# Half-width, in units of eps, of the windows around a boundary-value peak
PEAK_WINDOW = 1000.0
QUAD_LIMIT = 400


# ---------------------------------------------------------------------------
# Building blocks
# ---------------------------------------------------------------------------

def finite_convolution(a: float, b: float, x: float) -> float:
    """(f_a * f_b)(x) = int_0^x f_a(y) f_b(x-y) dy for a, b >= 0"""
    if x <= 0:
        return 0.0
    return panel_integrate(lambda y: bessel_f(a, y) * bessel_f(b, x - y), 0.0, x, width=PANEL_WIDTH)


def correlation(a: float, b: float, x: float) -> float:
    """
    I(a, b, x) = int_0^inf f_a(x + y) f_b(y) dy for a, b >= 0, x >= 0

    With y = v^2 the integrand becomes
    2 sqrt(ab) / sqrt(v^2 + x) J_1(2 sqrt(a(v^2 + x))) J_1(2 sqrt(b) v),
    integrated by Gauss-Legendre up to v0 and by rotated Hankel contours beyond.
    """
    a = validate_nonnegative('a', a)
    b = validate_nonnegative('b', b)
    x = validate_nonnegative('x', x)
    if a == 0.0 or b == 0.0:
        return 0.0
    ra, rb = math.sqrt(a), math.sqrt(b)
    scale = 2.0 * ra * rb

    def amp(v):
        return scale / np.sqrt(v * v + x)

    def p_arg(v):
        return 2.0 * np.sqrt(a * (v * v + x))

    def q_arg(v):
        return 2.0 * rb * v

    def head(v):
        return amp(v) * special.j1(p_arg(v)) * special.j1(q_arg(v))

    # P(v0), Q(v0) >= 4
    v0 = 2.0 / min(ra, rb)
    beat = 2.0 * (ra - rb)
    if beat != 0.0 and abs(ra - rb) < 0.5 * MIN_BEAT:
        logger.warning(f"Correlation beat {beat:.3g} is small; the contour tail will be slow")
    near = panel_integrate(head, 0.0, v0, width=PANEL_WIDTH)
    far = bessel_product_tail(amp, p_arg, q_arg, v0, beat)
    return float(near + far)


def weber_sonine_integral(c: float) -> float:
    """int_0^inf J_1(u) J_1(cu) du / u"""
    c = validate_positive('c', c)
    v0 = 4.0 / min(1.0, c)
    near = panel_integrate(lambda u: special.j1(u) * special.j1(c * u) / u, 0.0, v0,
                           width=PANEL_WIDTH)
    far = bessel_product_tail(lambda u: 1.0 / u, lambda u: u, lambda u: c * u, v0, 1.0 - c)
    return float(near + far)


def signed_convolution(a: float, b: float, x: float) -> float:
    """
    (f_a * f_b)(x) over the whole line for real a, b, with f_c(x) = f_{-c}(-x) when c < 0
    """
    if a < 0 and b < 0:
        return signed_convolution(-a, -b, -x)
    if a < 0 <= b:
        a, b = b, a
    if b >= 0:
        return finite_convolution(a, b, x)
    c = -b
    if x >= 0:
        return correlation(a, c, x)
    return correlation(c, a, -x)


# ---------------------------------------------------------------------------
# Hyperfunctions and boundary values
# ---------------------------------------------------------------------------

def _branch_distance(z: complex) -> float:
    if z.real >= 0:
        return abs(z.imag)
    return abs(z)


def _check_branch(z) -> complex:
    validate_finite('z', z)
    z = complex(z)
    if _branch_distance(z) < BRANCH_GUARD:
        raise DomainError(f"z={z} is within {BRANCH_GUARD:g} of the cut [0, inf)")
    return z


def hyperfunction_d(z, y: float) -> complex:
    """
    d(z, y) = K_0(sqrt(y) sqrt(y - 2z)) / (2 pi i) on the principal branch

    Args:
        z: Point off [0, inf)
        y: Non-negative real parameter

    Returns:
        The complex value

    Raises:
        PoleError: y = 0, where the defining integral diverges logarithmically at t = 0
    """
    z = _check_branch(z)
    y = validate_nonnegative('y', y)
    if y == 0.0:
        raise PoleError(f"d(z, 0) diverges at z={z}")
    w = np.sqrt(y) * np.sqrt(complex(y - 2.0 * z))
    return complex(special.kv(0, w)) / (2j * math.pi)


def hyperfunction_e(z, y: float) -> complex:
    """
    e(z, y) = sqrt(y / (y - 2z)) K_1(sqrt(y) sqrt(y - 2z)) / (2 pi i), the z-derivative of d

    At y = 0 the limit -1 / (2z) / (2 pi i) is returned.
    """
    z = _check_branch(z)
    y = validate_nonnegative('y', y)
    if y == 0.0:
        return -1.0 / (2.0 * z) / (2j * math.pi)
    root = np.sqrt(complex(y - 2.0 * z))
    w = np.sqrt(y) * root
    return complex(np.sqrt(y) / root * special.kv(1, w)) / (2j * math.pi)


def boundary_kernel(a: float, z, which: str = 'E') -> complex:
    """
    Analytic functions whose boundary-value differences are E_a, A_a and -iB_a

    With W = sqrt(a) sqrt(a - z):
        E: 2 sqrt(a) sqrt(a / (a - z)) K_1(2W) / (2 pi i)
        A: sqrt(a) (sqrt(a / (a - z)) K_1(2W) + K_0(2W)) / (2 pi i)
        B: sqrt(a) (sqrt(a / (a - z)) K_1(2W) - K_0(2W)) / (2 pi i)
    """
    a = validate_positive('a', a)
    z = _check_branch(z)
    ra = math.sqrt(a)
    root = np.sqrt(complex(a - z))
    w2 = 2.0 * ra * root
    k1_term = ra / root * special.kv(1, w2)
    if which == 'E':
        value = 2.0 * k1_term
    elif which == 'A':
        value = k1_term + special.kv(0, w2)
    elif which == 'B':
        value = k1_term - special.kv(0, w2)
    else:
        raise DomainError(f"Unknown boundary kernel: {which}")
    return complex(ra * value) / (2j * math.pi)


def boundary_E_a(a: float, x: float, eps: float = DEFAULT_EPS, which: str = 'E') -> float:
    """
    Boundary-value difference G(x + i eps) - G(x - i eps) of a boundary kernel

    The kernels are real on (-inf, a) up to the 1/(2 pi i) factor, so the
    difference equals 2 Re G(x + i eps).
    """
    if not 0 < eps <= 1e-3:
        raise DomainError(f"eps must lie in (0, 1e-3], got {eps}")
    return 2.0 * boundary_kernel(a, complex(x, eps), which).real


def d_jump(x: float, y: float, eps: float = DEFAULT_EPS) -> float:
    """d(x + i eps, y) - d(x - i eps, y) = 2 Re d(x + i eps, y)"""
    return 2.0 * hyperfunction_d(complex(x, eps), y).real


def _peaked_quad(func: Callable, peak: float, lo: float, hi: float, eps: float) -> float:
    """Integral of a real function with a width-eps peak at `peak`, split around it"""
    window = PEAK_WINDOW * eps
    edges = sorted({lo, hi, *(p for p in (peak - window, peak, peak + window) if lo < p < hi)})
    total = 0.0
    for left, right in zip(edges[:-1], edges[1:]):
        value, _ = integrate.quad(func, left, right, limit=QUAD_LIMIT, epsabs=1e-10, epsrel=1e-10)
        total += value
    return total


def paired_e_jump(x: float, psi: Callable, upper: float, eps: float = DEFAULT_EPS) -> float:
    """int_0^upper [e(x + i eps, y) - e(x - i eps, y)] psi(y) dy"""
    def integrand(y):
        return 2.0 * hyperfunction_e(complex(x, eps), y).real * psi(y)

    return _peaked_quad(integrand, 2.0 * x, 0.0, upper, eps)


def paired_boundary(a: float, psi: Callable, lo: float, hi: float, which: str = 'E',
                    eps: float = DEFAULT_EPS) -> float:
    """int_lo^hi (boundary-value difference)(x) psi(x) dx"""
    return _peaked_quad(lambda x: boundary_E_a(a, x, eps, which) * psi(x), a, lo, hi, eps)


def explicit_boundary_pairing(a: float, psi: Callable, hi: float, which: str = 'E') -> float:
    """
    Pairing of psi with the explicit distributions, w = sqrt(a(x - a)):

        E_a  = sqrt(a) (delta_a + 1_{x>a} d/dx J_0(2w))
        A_a  = sqrt(a)/2 (delta_a + 1_{x>a} (J_0(2w) + d/dx J_0(2w)))
        -iB_a = sqrt(a)/2 (delta_a + 1_{x>a} (d/dx J_0(2w) - J_0(2w)))
    """
    ra = math.sqrt(a)

    def d_j0(x):
        return -a * jinc(a * (x - a))

    def j0(x):
        return special.j0(2.0 * np.sqrt(a * np.maximum(x - a, 0.0)))

    if which == 'E':
        density, weight = d_j0, ra
    elif which == 'A':
        density, weight = (lambda x: j0(x) + d_j0(x)), 0.5 * ra
    elif which == 'B':
        density, weight = (lambda x: d_j0(x) - j0(x)), 0.5 * ra
    else:
        raise DomainError(f"Unknown boundary kernel: {which}")
    tail = panel_integrate(lambda x: density(x) * psi(x), a, max(hi, a), width=PANEL_WIDTH)
    return weight * (float(psi(a)) + tail)


def gaussian(center: float, width: float) -> Callable:
    """Smooth test function exp(-(y - center)^2 / (2 width^2))"""
    def psi(y):
        return np.exp(-0.5 * ((np.asarray(y) - center) / width) ** 2)
    return psi


WEAK_TEST_FUNCTIONS = {
    'exp': lambda y: np.exp(-np.asarray(y)),
    'damped_cos': lambda y: np.cos(np.asarray(y)) * np.exp(-0.5 * np.asarray(y)),
    'gaussian': gaussian(1.5, 0.6),
}


def weak_derivative_sides(x: float, psi: Callable) -> Tuple[float, float]:
    """
    Both sides of the weak form of

        d/dx (1/2 J_0(sqrt(y(2x-y))) 1_{0<y<2x}) = delta_{2x}(y)
            - 1/2 sqrt(y/(2x-y)) J_1(sqrt(y(2x-y))) 1_{0<y<2x}

    paired with psi. The left side differentiates the paired J_0 term with a 5-point
    stencil; the right side uses y = 2x - t^2 to regularize the square root.
    """
    x = validate_positive('x', x)

    def paired(xx):
        return panel_integrate(
            lambda y: 0.5 * special.j0(np.sqrt(np.maximum(y * (2 * xx - y), 0.0))) * psi(y),
            0.0, 2.0 * xx, width=PANEL_WIDTH)

    h = FD_STEP * min(1.0, x)
    f = [paired(x + k * h) for k in (-2, -1, 1, 2)]
    lhs = (f[0] - 8 * f[1] + 8 * f[2] - f[3]) / (12 * h)

    def regular(t):
        y = 2.0 * x - t * t
        return np.sqrt(y) * special.j1(t * np.sqrt(y)) * psi(y)

    rhs = float(psi(2.0 * x)) - panel_integrate(regular, 0.0, math.sqrt(2.0 * x), width=PANEL_WIDTH)
    return lhs, rhs


# ---------------------------------------------------------------------------
# Catalog
# ---------------------------------------------------------------------------

def _phi_closed_sides(sign: str, b: float, x: float) -> Tuple[float, float]:
    h = FD_STEP
    c0 = [continued_bessel_pair(b, x + k * h)[0] for k in (-2, -1, 1, 2)]
    derivative = (c0[0] - 8 * c0[1] + 8 * c0[2] - c0[3]) / (12 * h)
    base = continued_bessel_pair(b, x)[0]
    rhs = base + derivative if sign == '+' else base - derivative
    return float(closed_phi(b, sign, x)), rhs


def _phi_equation_sides(sign: str, b: float, x: float) -> Tuple[float, float]:
    sgn = 1.0 if sign == '+' else -1.0
    integral = panel_integrate(
        lambda y: special.j0(2.0 * np.sqrt(x * y)) * closed_phi(b, sign, y), 0.0, b, width=PANEL_WIDTH)
    return float(closed_phi(b, sign, x)) + sgn * integral, float(special.j0(2.0 * math.sqrt(b * x)))


def _group_sum(p):
    a, b, x = p['a'], p['b'], p['x']
    return float(bessel_f(a + b, x)), float(bessel_f(a, x) + bessel_f(b, x)) - finite_convolution(a, b, x)


def _group_difference(p):
    a, b, x = p['a'], p['b'], p['x']
    return float(bessel_f(a - b, x)), float(bessel_f(a, x)) - correlation(a, b, x)


def _orthogonal_shift(p):
    a, b, x = p['a'], p['b'], p['x']
    return 0.0, float(bessel_f(b, x)) - correlation(b, a, x)


def _shifted_difference(p):
    a, b, x = p['a'], p['b'], p['x']
    lhs = float(bessel_f(a - b, x)) if a >= b else 0.0
    return lhs, float(bessel_f(a, x)) - correlation(a, b, x)


def _j0_convolution(p):
    a, b, x = p['a'], p['b'], p['x']
    integral = panel_integrate(
        lambda y: special.j0(2.0 * np.sqrt(a * y)) * bessel_f(b, x - y), 0.0, x, width=PANEL_WIDTH)
    return (float(special.j0(2.0 * math.sqrt((a + b) * x))),
            float(special.j0(2.0 * math.sqrt(a * x))) - integral)


def _i0_continuation(p):
    a, b = p['a'], p['b']
    integral = panel_integrate(
        lambda y: special.j0(2.0 * np.sqrt(a * y)) * b * continued_bessel_pair(b, y)[1],
        0.0, b, width=PANEL_WIDTH)
    return float(continued_bessel_pair(b, a)[0]), float(special.j0(2.0 * math.sqrt(a * b))) + integral


def _j0_product_convolution(p):
    a, b, x = p['a'], p['b'], p['x']
    integral = panel_integrate(
        lambda y: special.j0(2.0 * np.sqrt(a * y)) * special.j0(2.0 * np.sqrt(b * np.maximum(x - y, 0.0))),
        0.0, x, width=PANEL_WIDTH)
    return float(x * jinc((a + b) * x)), integral


def _j0_i0_convolution(p):
    a, b = p['a'], p['b']
    integral = panel_integrate(
        lambda y: special.j0(2.0 * np.sqrt(a * y)) * continued_bessel_pair(b, y)[0],
        0.0, b, width=PANEL_WIDTH)
    return float(b * continued_bessel_pair(b, a)[1]), integral


def _group_law(p):
    a, b, x = p['a'], p['b'], p['x']
    rhs = float(bessel_f(a, x) + bessel_f(b, x)) - signed_convolution(a, b, x)
    return float(bessel_f(a + b, x)), rhs


def _weber_sonine(p):
    c = p['c']
    return weber_sonine_integral(c), 0.5 * min(c, 1.0 / c)


def _sonine_self_convolution(p):
    x = p['x']
    return float(jinc(x)), correlation(1.0, 1.0, x)


def _weak_derivative(p):
    name = sorted(WEAK_TEST_FUNCTIONS)[int(p['test_function'])]
    return weak_derivative_sides(p['x'], WEAK_TEST_FUNCTIONS[name])


def _mellin_chi(p):
    s = complex(p['s_re'], p['s_im'])
    value, _ = chi_integral(s)
    return value, chi(s)


def _richardson(func: Callable, eps: float) -> float:
    return 2.0 * func(0.5 * eps) - func(eps)


def _jump_d(p):
    x, y, eps = p['x'], p['y'], p['eps']
    lhs = _richardson(lambda e: d_jump(x, y, e), eps)
    rhs = 0.5 * special.j0(math.sqrt(y * (2 * x - y))) if 0 < y < 2 * x else 0.0
    return lhs, rhs


def _jump_e(p):
    x, eps = p['x'], p['eps']
    psi = gaussian(p['center'], p['width'])
    upper = max(p['center'] + 12 * p['width'], 2 * x + 1.0)
    lhs = _richardson(lambda e: paired_e_jump(x, psi, upper, e), eps)

    def regular(t):
        y = 2.0 * x - t * t
        return np.sqrt(y) * special.j1(t * np.sqrt(y)) * psi(y)

    rhs = float(psi(2.0 * x)) - panel_integrate(regular, 0.0, math.sqrt(2.0 * x), width=PANEL_WIDTH)
    return lhs, rhs


def _boundary(which: str):
    def evaluate(p):
        a, eps = p['a'], p['eps']
        psi = gaussian(p['center'], p['width'])
        lo = min(p['center'] - 12 * p['width'], a - 1.0)
        hi = max(p['center'] + 12 * p['width'], a + 1.0)
        lhs = _richardson(lambda e: paired_boundary(a, psi, lo, hi, which, e), eps)
        return lhs, explicit_boundary_pairing(a, psi, hi, which)
    return evaluate


def _draw_ab(rng: np.random.Generator, ordered: bool = False, separated: bool = False):
    while True:
        a, b = rng.uniform(0.1, 3.0, size=2)
        if ordered and a < b:
            a, b = b, a
        if not separated or abs(math.sqrt(a) - math.sqrt(b)) >= MIN_BEAT:
            return float(a), float(b)


def _draw_x(rng: np.random.Generator) -> float:
    return float(rng.uniform(0.05, 5.0))


def _sample_ordered(rng):
    a, b = _draw_ab(rng, ordered=True)
    return {'a': a, 'b': b, 'x': _draw_x(rng)}


def _sample_separated_ordered(rng):
    a, b = _draw_ab(rng, ordered=True, separated=True)
    return {'a': a, 'b': b, 'x': _draw_x(rng)}


def _sample_separated(rng):
    a, b = _draw_ab(rng, separated=True)
    return {'a': a, 'b': b, 'x': _draw_x(rng)}


def _sample_pair(rng):
    a, b = _draw_ab(rng)
    return {'a': a, 'b': b, 'x': _draw_x(rng)}


def _sample_endpoint(rng):
    a, b = _draw_ab(rng)
    return {'a': a, 'b': b}


def _sample_phi(rng):
    return {'b': float(rng.uniform(0.1, 3.0)), 'x': _draw_x(rng)}


def _sample_signed(rng):
    while True:
        a, b = rng.uniform(-3.0, 3.0, size=2)
        if min(abs(a), abs(b)) < 0.1:
            continue
        if a * b < 0 and abs(math.sqrt(abs(a)) - math.sqrt(abs(b))) < MIN_BEAT:
            continue
        x = _draw_x(rng) * (1.0 if rng.uniform() < 0.5 else -1.0)
        return {'a': float(a), 'b': float(b), 'x': x}


def _sample_weber(rng):
    while True:
        c = float(rng.uniform(0.2, 5.0))
        if abs(c - 1.0) >= MIN_BEAT:
            return {'c': c}


def _sample_sonine(rng):
    return {'x': float(rng.uniform(0.0, 5.0))}


def _sample_weak(rng):
    return {'x': float(rng.uniform(0.2, 3.0)),
            'test_function': float(rng.integers(len(WEAK_TEST_FUNCTIONS)))}


def _sample_chi(rng):
    return {'s_re': float(rng.uniform(0.8, 0.95)), 's_im': float(rng.uniform(-2.0, 2.0))}


def _sample_jump_d(rng):
    x = float(rng.uniform(0.5, 3.0))
    ratio = float(rng.uniform(0.15, 1.55))
    # (0.15, 0.85) inside the support, (1.15, 1.85) beyond it
    if ratio > 0.85:
        ratio += 0.3
    return {'x': x, 'y': 2.0 * x * ratio, 'eps': DEFAULT_EPS}


def _sample_jump_e(rng):
    return {'x': float(rng.uniform(0.5, 2.0)), 'center': float(rng.uniform(0.5, 3.0)),
            'width': float(rng.uniform(0.3, 0.8)), 'eps': DEFAULT_EPS}


def _sample_boundary(rng):
    a = float(rng.uniform(0.3, 2.0))
    return {'a': a, 'center': a + float(rng.uniform(-0.5, 2.0)),
            'width': float(rng.uniform(0.3, 0.8)), 'eps': DEFAULT_EPS}


@dataclass(frozen=True)
class CatalogEntry:
    """One identity: description, tolerance key, parameter sampler and evaluator"""
    description: str
    tol_key: str
    sampler: Callable[[np.random.Generator], Dict[str, float]]
    evaluate: Callable[[Dict[str, float]], Tuple[complex, complex]]


CATALOG: Dict[str, CatalogEntry] = {
    'group_sum': CatalogEntry(
        'f_{a+b} = f_a + f_b - f_a * f_b for a >= b >= 0', 'identity_abs',
        _sample_ordered, _group_sum),
    'group_difference': CatalogEntry(
        'f_{a-b}(x) = f_a(x) - int_x^inf f_a(y) f_b(y-x) dy for a >= b', 'oscillatory_abs',
        _sample_separated_ordered, _group_difference),
    'orthogonal_shift': CatalogEntry(
        '0 = f_b(x) - int_0^inf f_a(y) f_b(y+x) dy for a >= b', 'oscillatory_abs',
        _sample_separated_ordered, _orthogonal_shift),
    'shifted_difference': CatalogEntry(
        'f_{a-b}(x) 1_{a>=b} = f_a(x) - int_0^inf f_a(y+x) f_b(y) dy', 'oscillatory_abs',
        _sample_separated, _shifted_difference),
    'j0_convolution': CatalogEntry(
        'J_0(2 sqrt((a+b)x)) = J_0(2 sqrt(ax)) - int_0^x J_0(2 sqrt(ay)) f_b(x-y) dy', 'identity_abs',
        _sample_pair, _j0_convolution),
    'i0_continuation': CatalogEntry(
        'I_0(2 sqrt(b(b-a))) = J_0(2 sqrt(ab)) + int_0^b J_0(2 sqrt(ay)) b I_1(...)/sqrt(...) dy',
        'identity_abs', _sample_endpoint, _i0_continuation),
    'j0_product_convolution': CatalogEntry(
        'x J_1(2 sqrt((a+b)x)) / sqrt((a+b)x) = int_0^x J_0(2 sqrt(ay)) J_0(2 sqrt(b(x-y))) dy',
        'identity_abs', _sample_pair, _j0_product_convolution),
    'j0_i0_convolution': CatalogEntry(
        'b I_1(2 sqrt(b(b-a))) / sqrt(b(b-a)) = int_0^b J_0(2 sqrt(ay)) I_0(2 sqrt(b(b-y))) dy',
        'identity_abs', _sample_endpoint, _j0_i0_convolution),
    'phi_plus_closed': CatalogEntry(
        'phi_b^+ = (1 + d/dx) I_0(2 sqrt(b(b-x)))', 'identity_abs',
        _sample_phi, lambda p: _phi_closed_sides('+', p['b'], p['x'])),
    'phi_minus_closed': CatalogEntry(
        'phi_b^- = (1 - d/dx) I_0(2 sqrt(b(b-x)))', 'identity_abs',
        _sample_phi, lambda p: _phi_closed_sides('-', p['b'], p['x'])),
    'phi_plus_equation': CatalogEntry(
        'phi_b^+(x) + int_0^b J_0(2 sqrt(xy)) phi_b^+(y) dy = J_0(2 sqrt(bx))', 'identity_abs',
        _sample_phi, lambda p: _phi_equation_sides('+', p['b'], p['x'])),
    'phi_minus_equation': CatalogEntry(
        'phi_b^-(x) - int_0^b J_0(2 sqrt(xy)) phi_b^-(y) dy = J_0(2 sqrt(bx))', 'identity_abs',
        _sample_phi, lambda p: _phi_equation_sides('-', p['b'], p['x'])),
    'group_law': CatalogEntry(
        'f_{a+b} = f_a + f_b - f_a * f_b for real a, b with f_{-c}(x) = f_c(-x)', 'oscillatory_abs',
        _sample_signed, _group_law),
    'weber_sonine': CatalogEntry(
        'int_0^inf J_1(u) J_1(cu) du/u = min(c, 1/c) / 2', 'oscillatory_abs',
        _sample_weber, _weber_sonine),
    'sonine_self_convolution': CatalogEntry(
        'J_1(2 sqrt x)/sqrt x = int_0^inf J_1(2 sqrt y)/sqrt y J_1(2 sqrt(x+y))/sqrt(x+y) dy',
        'oscillatory_abs', _sample_sonine, _sonine_self_convolution),
    'weak_derivative': CatalogEntry(
        'd/dx (J_0(sqrt(y(2x-y)))/2) = delta_{2x} - sqrt(y/(2x-y)) J_1(sqrt(y(2x-y)))/2, weakly',
        'identity_abs', _sample_weak, _weak_derivative),
    'mellin_chi': CatalogEntry(
        'Gamma(1-s)/Gamma(s) = 4^s/2 int_0^inf J_0(u) u^{1-2s} du for 3/4 < Re s < 1', 'chi_rel',
        _sample_chi, _mellin_chi),
    'jump_d': CatalogEntry(
        'd(x+i0, y) - d(x-i0, y) = J_0(sqrt(y(2x-y))) 1_{0<y<2x} / 2', 'boundary_abs',
        _sample_jump_d, _jump_d),
    'jump_e': CatalogEntry(
        'e(x+i0, y) - e(x-i0, y) = delta_{2x}(y) - sqrt(y/(2x-y)) J_1(sqrt(y(2x-y))) / 2, weakly',
        'boundary_abs', _sample_jump_e, _jump_e),
    'boundary_E': CatalogEntry(
        'E_a = sqrt(a) (2e(x+i0, 2a) - 2e(x-i0, 2a)), weakly', 'boundary_abs',
        _sample_boundary, _boundary('E')),
    'boundary_A': CatalogEntry(
        'A_a = sqrt(a) (a(x+i0, 2a) - a(x-i0, 2a)), weakly', 'boundary_abs',
        _sample_boundary, _boundary('A')),
    'boundary_B': CatalogEntry(
        '-iB_a = sqrt(a) (-ib(x+i0, 2a) + ib(x-i0, 2a)), weakly', 'boundary_abs',
        _sample_boundary, _boundary('B')),
}


def list_catalog() -> List[Tuple[str, str]]:
    """(id, description) for every catalog entry, sorted by id"""
    return [(key, CATALOG[key].description) for key in sorted(CATALOG)]


def _entry(identity_id: str) -> CatalogEntry:
    if identity_id not in CATALOG:
        raise DomainError(f"Unknown identity id: {identity_id}")
    return CATALOG[identity_id]


def draw_cases(identity_id: str, count: int = 5, seed: int = 0,
               profile: str = 'default') -> List[IdentityCase]:
    """
    Deterministic parameter draws for one catalog id

    Args:
        identity_id: Catalog id
        count: Number of draws
        seed: Base seed; each id gets its own stream
        profile: Tolerance profile used to fill in `tol`

    Returns:
        List of IdentityCase
    """
    entry = _entry(identity_id)
    index = sorted(CATALOG).index(identity_id)
    rng = np.random.default_rng(np.random.SeedSequence([seed, index]))
    tol = get_tolerance(profile, entry.tol_key)
    return [IdentityCase(id=identity_id, params=entry.sampler(rng), tol=tol) for _ in range(count)]


def verify(case: IdentityCase, profile: str = 'default') -> CheckReport:
    """
    Evaluate both sides of a catalog identity

    Errors raised by the evaluation are recorded on the report, with the error
    code as its note.

    Args:
        case: Catalog id with parameters and optional tolerance
        profile: Tolerance profile used when the case has none

    Returns:
        CheckReport
    """
    entry = _entry(case.id)
    tol = case.tol if case.tol is not None else get_tolerance(profile, entry.tol_key)
    try:
        lhs, rhs = entry.evaluate(case.params)
    except LabError as e:
        logger.warning(f"Identity {case.id} flagged at {case.params}: {e.code} {e}")
        return CheckReport.failure(case.id, case.params, tol, note=e.code)

    report = CheckReport.build(case.id, case.params, lhs, rhs, tol)
    if not report.passed:
        logger.warning(f"Identity {case.id} failed at {case.params}: abs_err={report.abs_err:.3e}")
    return report
