"""
Spectral Service - chi(s), g_s, the Mellin data A, B, E of the evaluator,
the reproducing kernel X_a(s, z) and evaluator norms

Every closed form here has an independent quadrature route next to it.
"""
import logging
import math
from typing import List, Tuple

import numpy as np
from scipy import integrate, special

from models import CheckReport, SpectralPoint
from utils.errors import ConvergenceError, DomainError, PoleError
from utils.validators import validate_finite, validate_positive, validate_strip
from .quadrature import log_mellin_head, panel_nodes, zero_panel_sum
from .specfun import bessel_k_complex, exp_integral_e1, gamma_complex, rgamma_complex

logger = logging.getLogger(__name__)

# Number of Bessel zeros used as panel breakpoints for oscillatory tails
TAIL_ZEROS = 240
SERIES_TOL = 1e-16
# Distance to a positive integer below which g_s switches to its limit form
INTEGER_GUARD = 1e-8
# Difference-quotient step for the diagonal s + z = 1 of the reproducing kernel
DIAGONAL_GUARD = 1e-6
DIAGONAL_STEP = 1e-4
# Log-magnitude drop at which the double-integral oracle is truncated
ORACLE_LOG_DROP = 40.0
ORACLE_PANEL_WIDTH = 0.25
ORACLE_ORDER = 20


def chi(s: complex) -> complex:
    """
    chi(s) = Gamma(1-s) / Gamma(s)

    Args:
        s: Complex argument, not a positive integer

    Returns:
        chi(s); |chi| = 1 on Re s = 1/2
    """
    validate_finite('s', s)
    s = complex(s)
    if s.imag == 0.0 and s.real >= 1 and s.real == math.floor(s.real):
        raise PoleError(f"chi has a pole at s={s.real:g}")
    return gamma_complex(1.0 - s) * rgamma_complex(s)


def chi_integral(s: complex, tol: float = 1e-9) -> Tuple[complex, float]:
    """
    int_0^inf J_0(2 sqrt(t)) t^{-s} dt by zero-panel summation

    With u = 2 sqrt(t) the integral is 4^s / 2 int_0^inf J_0(u) u^{1-2s} du. The head
    [0, j_{0,1}] carries the u^{1-2s} endpoint behaviour and is integrated in log u.

    Returns:
        Tuple (value, error estimate)
    """
    s = validate_strip('s', s, 0.75, 1.0)
    zeros = special.jn_zeros(0, TAIL_ZEROS)
    exponent = 1.0 - 2.0 * s

    head = log_mellin_head(special.j0, zeros[0], exponent)
    tail, error = zero_panel_sum(lambda u: special.j0(u) * u ** exponent, zeros, tol=tol)
    scale = 4.0 ** s / 2.0
    return scale * (head + tail), abs(scale) * error


def chi_integral_check(s: complex, tol: float = 1e-6) -> CheckReport:
    """Weber-Sonine-Schafheitlin integral for chi(s) on 3/4 < Re s < 1"""
    s = complex(s)
    params = {'sigma': s.real, 'gamma': s.imag}
    try:
        value, error = chi_integral(s)
    except ConvergenceError as e:
        return CheckReport.failure('mellin_chi', params, tol, e.code)
    return CheckReport.build('mellin_chi', params, value, chi(s), tol,
                             note=f"tail_err={error:.1e}")


def _g_series(a: float, s: complex, x: float, skip: int = -1) -> complex:
    """sum_n (-1)^n x^n a^{n+1-s} / (n!^2 (n+1-s)), omitting term `skip`"""
    total = 0.0 + 0.0j
    power = a ** (1.0 - s)
    coef = 1.0
    n = 0
    while True:
        if n != skip:
            term = coef * power / (n + 1 - s)
            total += term
            if n > x * a and abs(term) < SERIES_TOL * max(1.0, abs(total)):
                return total
        n += 1
        coef *= -x / (n * n)
        power *= a
        if n > 500:
            raise ConvergenceError(f"g_s series did not settle for a={a}, x={x}")


def g_s(a: float, s: complex, x: float) -> complex:
    """
    g_s(x) = int_a^inf J_0(2 sqrt(xy)) y^{-s} dy = chi(s) x^{s-1} - sum_n (-1)^n x^n a^{n+1-s} / (n!^2 (n+1-s))

    At s = m (a positive integer) the pole of chi cancels the n = m-1 term; the
    pair is replaced by (-1)^m x^{m-1} (log(ax) - 2 psi(m)) / ((m-1)!)^2.

    Args:
        a: Lower limit, a > 0
        s: Re s > 1/2
        x: x > 0

    Returns:
        g_s(x)
    """
    a = validate_positive('a', a)
    x = validate_positive('x', x)
    s = validate_strip('s', s, 0.5, None)
    m = round(s.real)
    if m >= 1 and abs(s - m) < INTEGER_GUARD:
        k = m - 1
        paired = (-1) ** m * x ** k * (math.log(a * x) - 2.0 * special.digamma(m)) / math.factorial(k) ** 2
        return paired - _g_series(a, complex(m), x, skip=k)
    return chi(s) * x ** (s - 1.0) - _g_series(a, s, x)


def g_s_quadrature(a: float, s: complex, x: float, tol: float = 1e-10) -> complex:
    """g_s(x) by zero-panel summation of int_{2 sqrt(xa)}^inf J_0(u) (u^2/4x)^{-s} u/(2x) du"""
    a = validate_positive('a', a)
    x = validate_positive('x', x)
    s = validate_strip('s', s, 0.25, None)
    u0 = 2.0 * math.sqrt(x * a)
    zeros = special.jn_zeros(0, TAIL_ZEROS + int(u0 / math.pi) + 1)
    breakpoints = np.concatenate(([u0], zeros[zeros > u0]))

    def integrand(u):
        return special.j0(u) * (u * u / (4.0 * x)) ** (-s) * u / (2.0 * x)

    value, _ = zero_panel_sum(integrand, breakpoints, tol=tol)
    return value


def spectral_point(a: float, s: complex) -> SpectralPoint:
    """
    Mellin data at s

        A = sqrt(a) (K_s(2a) + K_{s-1}(2a)),  -iB = sqrt(a) (K_s(2a) - K_{s-1}(2a)),  E = 2 sqrt(a) K_s(2a)

    Returns:
        SpectralPoint with E = A - iB
    """
    a = validate_positive('a', a)
    validate_finite('s', s)
    s = complex(s)
    root = math.sqrt(a)
    k_s = bessel_k_complex(s, 2.0 * a)
    k_prev = bessel_k_complex(s - 1.0, 2.0 * a)
    minus_ib = root * (k_s - k_prev)
    return SpectralPoint(a=a, s=s, A=root * (k_s + k_prev), B=1j * minus_ib, E=2.0 * root * k_s)


def mellin_E(a: float, s: complex) -> complex:
    """E_a(s) / Gamma(s), the right Mellin transform of the distribution E_a"""
    return 2.0 * math.sqrt(a) * bessel_k_complex(s, 2.0 * a) * rgamma_complex(s)


def mellin_E_quadrature(a: float, s: complex, tol: float = 1e-10) -> complex:
    """
    sqrt(a) (a^{-s} + 1/2 int_a^inf (phi_a^+ - phi_a^-) x^{-s} dx)

    On x > a, phi^+ - phi^- = -2a J_1(2w)/w with w = sqrt(a(x-a)). In u = 2w the tail
    is int_0^inf J_1(u) (a + u^2/4a)^{-s} du, summed between zeros of J_1.

    Args:
        a: a > 0
        s: Re s > 1/4

    Returns:
        Value to compare with E_a(s) / Gamma(s)
    """
    a = validate_positive('a', a)
    s = validate_strip('s', s, 0.25, None)
    breakpoints = np.concatenate(([0.0], special.jn_zeros(1, TAIL_ZEROS)))

    def integrand(u):
        return special.j1(u) * (a + u * u / (4.0 * a)) ** (-s)

    tail, error = zero_panel_sum(integrand, breakpoints, tol=tol)
    logger.debug(f"mellin_E_quadrature a={a} s={s}: tail error {error:.1e}")
    return math.sqrt(a) * (a ** (-s) - tail)


def _kernel_numerator(a: float, s: complex, z: complex) -> complex:
    root = 2.0 * math.sqrt(a)
    x = 2.0 * a
    e_s, e_z = root * bessel_k_complex(s, x), root * bessel_k_complex(z, x)
    e_s1, e_z1 = root * bessel_k_complex(1.0 - s, x), root * bessel_k_complex(1.0 - z, x)
    return e_s * e_z - e_s1 * e_z1


def rep_kernel(a: float, s: complex, z: complex) -> complex:
    """
    X_a(s, z) = (E(s) E(z) - E(1-s) E(1-z)) / (s + z - 1)

    When |s + z - 1| < 1e-6 the z-derivative of the numerator at z = 1 - s is taken
    by a symmetric difference quotient with step 1e-4.
    """
    a = validate_positive('a', a)
    validate_finite('s', s)
    validate_finite('z', z)
    s, z = complex(s), complex(z)
    denom = s + z - 1.0
    if abs(denom) >= DIAGONAL_GUARD:
        return _kernel_numerator(a, s, z) / denom
    z0 = 1.0 - s
    h = DIAGONAL_STEP
    return (_kernel_numerator(a, s, z0 + h) - _kernel_numerator(a, s, z0 - h)) / (2.0 * h)


def _oracle_half_width(a: float, sigma: float) -> float:
    """V with 2a (cosh V - 1) - (|sigma| + 1) V >= ORACLE_LOG_DROP"""
    v = 1.0
    while 2.0 * a * (math.cosh(v) - 1.0) - (abs(sigma) + 1.0) * v < ORACLE_LOG_DROP:
        v += 0.25
        if v > 40.0:
            raise ConvergenceError(f"Oracle truncation not reached for a={a}, sigma={sigma}")
    return v


def rep_kernel_oracle(a: float, s: complex, z: complex) -> complex:
    """
    Tensor Gauss-Legendre quadrature of

        int int e^{-a(t + 1/t + u + 1/u)} t^{s-1} u^{z-1} / (t + u) dt du

    in t = e^v, u = e^w, where the weight becomes e^{-2a cosh v - 2a cosh w}.

    Args:
        a: a > 0
        s, z: Arguments with |Re - 1/2| <= 2

    Returns:
        The double integral
    """
    a = validate_positive('a', a)
    s, z = complex(s), complex(z)
    for name, val in (('s', s), ('z', z)):
        if abs(val.real - 0.5) > 2.0:
            raise DomainError(f"rep_kernel_oracle needs |Re {name} - 1/2| <= 2, got {val}")

    def axis(arg):
        half = _oracle_half_width(a, arg.real)
        panels = int(math.ceil(2.0 * half / ORACLE_PANEL_WIDTH))
        v, wv = panel_nodes(-half, half, panels, ORACLE_ORDER)
        return v, wv * np.exp(-2.0 * a * np.cosh(v) + arg * v)

    v, fv = axis(s)
    w, fw = axis(z)
    logger.debug(f"rep_kernel_oracle a={a}: {len(v)} x {len(w)} nodes")
    denom = np.exp(v)[:, None] + np.exp(w)[None, :]
    return complex(fv @ (1.0 / denom) @ fw)


def evaluator_norm(a: float, s: complex) -> float:
    """Squared norm of the evaluator at s: X_a(conj s, s)"""
    s = complex(s)
    return float(rep_kernel(a, s.conjugate(), s).real)


def evaluator_norm_half(a: float) -> float:
    """||X_{1/2}^a||^2 = 2 E_1(4a)"""
    a = validate_positive('a', a)
    return 2.0 * exp_integral_e1(4.0 * a)


def evaluator_norm_half_quadrature(a: float) -> float:
    """2 int_a^inf (det(1-H_b) / det(1+H_b))^2 db / b with the closed-form determinants"""
    from .fredholm import closed_det

    a = validate_positive('a', a)

    def integrand(b):
        return (closed_det(b, '-') / closed_det(b, '+')) ** 2 / b

    value, _ = integrate.quad(integrand, a, np.inf, epsabs=0.0, epsrel=1e-12, limit=200)
    return 2.0 * value


def evaluator_norm_flow(a: float, upper: float, s: complex, order: int = 24) -> float:
    """2 int_a^upper (|A_b(s)|^2 + |B_b(s)|^2) db / b by Gauss-Legendre in log b"""
    a = validate_positive('a', a)
    upper = validate_positive('upper', upper)
    lo, hi = math.log(a), math.log(upper)
    panels = max(1, int(math.ceil((hi - lo) / 0.25)))
    logs, weights = panel_nodes(lo, hi, panels, order)
    total = 0.0
    for u, w in zip(logs, weights):
        point = spectral_point(math.exp(u), s)
        total += w * (abs(point.A) ** 2 + abs(point.B) ** 2)
    return 2.0 * total


def kernel_flow(a: float, upper: float, s: complex, z: complex, order: int = 24) -> complex:
    """2 int_a^upper (A_b(s) A_b(z) + B_b(s) B_b(z)) db / b by Gauss-Legendre in log b"""
    a = validate_positive('a', a)
    upper = validate_positive('upper', upper)
    lo, hi = math.log(a), math.log(upper)
    panels = max(1, int(math.ceil((hi - lo) / 0.25)))
    logs, weights = panel_nodes(lo, hi, panels, order)
    total = 0j
    for u, w in zip(logs, weights):
        left, right = spectral_point(math.exp(u), s), spectral_point(math.exp(u), z)
        total += w * (left.A * right.A + left.B * right.B)
    return 2.0 * total


def evaluator_norm_flow_check(a: float, upper: float, s: complex, tol: float = 1e-6) -> CheckReport:
    """X_a(conj s, s) - X_upper(conj s, s) = 2 int_a^upper (|A|^2 + |B|^2) db / b"""
    s = complex(s)
    lhs = evaluator_norm(a, s) - evaluator_norm(upper, s)
    rhs = evaluator_norm_flow(a, upper, s)
    return CheckReport.build('evaluator_norm_flow', {'a': a, 'upper': upper, 'sigma': s.real,
                                                    'gamma': s.imag}, lhs, rhs, tol)


def mellin_functional_check(t: float, s: complex, tol: float = 1e-6) -> CheckReport:
    """
    Right Mellin transform of H(e^{-tx}) against chi(s) times that of e^{-tx} at 1 - s

    Both sides are quadratures in log x; H(e^{-tx}) comes from apply_H_to. The
    closed value of both is t^{-s} Gamma(1-s).
    """
    from .discretize import apply_H_to, truncation_point

    t = validate_positive('t', t)
    s = validate_strip('s', s, 0.0, 1.0)

    def transformed(x):
        return apply_H_to(lambda y: np.exp(-t * y), x, decay=t)

    hi_h = truncation_point(1.0 / t, scale=1.0 / t)
    lhs = log_mellin_head(transformed, hi_h, -s)
    hi_f = truncation_point(t)
    rhs = chi(s) * log_mellin_head(lambda x: np.exp(-t * x), hi_f, s - 1.0)
    return CheckReport.build('mellin_functional', {'t': t, 'sigma': s.real, 'gamma': s.imag},
                             lhs, rhs, tol, note=f"closed={t ** (-s) * gamma_complex(1.0 - s):.10g}")


def mu_from_spectral(a: float, sigmas: Tuple[float, ...] = (20.0, 40.0),
                     tol: float = 0.1) -> List[CheckReport]:
    """
    Large-sigma normalization of the Mellin data

    -iB_a(sigma) / A_a(sigma) -> 1 and E_a(1-sigma) / E_a(sigma) * sigma / a -> 1, the
    latter expressing mu(a) = 2a through the asymptotics of the E-function. A final
    `mu_normalization_monotone` report carries the largest growth of |ratio - 1|
    between consecutive sigmas; it passes only when the gap never grows.
    """
    a = validate_positive('a', a)
    reports = []
    gaps = []
    for sigma in sorted(sigmas):
        point = spectral_point(a, sigma)
        ratio = (-1j * point.B / point.A).real
        gaps.append(abs(ratio - 1.0))
        reports.append(CheckReport.build('mu_normalization_B_over_A', {'a': a, 'sigma': sigma},
                                         ratio, 1.0, tol))
        reflected = 2.0 * math.sqrt(a) * bessel_k_complex(1.0 - sigma, 2.0 * a)
        scaled = (reflected / point.E).real * sigma / a
        reports.append(CheckReport.build('mu_normalization_E_ratio', {'a': a, 'sigma': sigma},
                                         scaled, 1.0, tol))
    growth = max([0.0] + [later - earlier for earlier, later in zip(gaps, gaps[1:])])
    reports.append(CheckReport.build('mu_normalization_monotone', {'a': a}, growth, 0.0, 0.0,
                                     note='gap to 1 grows with sigma' if growth > 0 else None))
    return reports
