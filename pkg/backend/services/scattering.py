"""
Scattering Service - canonical systems in u = log a, Jost solutions,
zeros of B on the critical line and the scattering phase

Residuals are computed from the K-Bessel closed forms of A and B; nothing here
integrates an ODE.
"""
import logging
import math
from typing import List, Sequence, Tuple

import numpy as np
from scipy import optimize, special

from models import CheckReport, ComplexValue, OdeResidual
from utils.errors import AccuracyLossError, DomainError
from utils.validators import validate_finite, validate_positive
from .discretize import DEFAULT_N, closed_phi
from .fredholm import fredholm_det
from .quadrature import log_mellin_head
from .spectral import (
    evaluator_norm,
    evaluator_norm_flow,
    evaluator_norm_flow_check,
    evaluator_norm_half,
    kernel_flow,
    rep_kernel,
    spectral_point,
)
from .specfun import gamma_complex

logger = logging.getLogger(__name__)

# Below this step the K-Bessel rounding noise dominates second differences
MIN_STEP = 1e-4
MAX_STEP = 1e-2
ZERO_SCAN_STEP = 0.05
ZERO_XTOL = 1e-10
MAX_GAMMA = 50.0
# Flow integrals stop once pi e^{-4b} falls below this
FLOW_TAIL = 1e-12


def potentials(u):
    """
    V_+ = mu^2 - dmu/du and V_- = mu^2 + dmu/du with mu = 2 e^u

    Returns:
        Tuple (V_plus, V_minus)
    """
    e = np.exp(np.asarray(u, dtype=float))
    v_plus = 4.0 * e * e - 2.0 * e
    v_minus = 4.0 * e * e + 2.0 * e
    if v_plus.ndim == 0:
        return v_plus.item(), v_minus.item()
    return v_plus, v_minus


def potential_lower_bound(lo: float = -10.0, hi: float = 10.0, points: int = 2001) -> float:
    """min of V_+ on a grid of [lo, hi]; V_+ >= -1/4 everywhere"""
    v_plus, _ = potentials(np.linspace(lo, hi, points))
    return float(v_plus.min())


def _check_step(h: float) -> float:
    h = validate_positive('h', h)
    if h > MAX_STEP:
        raise DomainError(f"Step h must be <= {MAX_STEP}, got {h}")
    if h < MIN_STEP:
        raise AccuracyLossError(f"Step h={h} is below the K-Bessel noise floor {MIN_STEP}")
    return h


def _s_of_gamma(gamma) -> Tuple[complex, complex]:
    if isinstance(gamma, ComplexValue):
        gamma = gamma.to_complex()
    validate_finite('gamma', gamma)
    gamma = complex(gamma)
    return gamma, 0.5 + 1j * gamma


def _stencil(a: float, s: complex, h: float):
    """A and B at a e^{kh}, k = -2..2"""
    u = math.log(a)
    points = [spectral_point(math.exp(u + k * h), s) for k in (-2, -1, 0, 1, 2)]
    return [p.A for p in points], [p.B for p in points]


def _d1(f, h):
    return (f[0] - 8.0 * f[1] + 8.0 * f[3] - f[4]) / (12.0 * h)


def _d2(f, h):
    return (-f[0] + 16.0 * f[1] - 30.0 * f[2] + 16.0 * f[3] - f[4]) / (12.0 * h * h)


def _relative(*terms) -> float:
    """|sum of terms| relative to the sum of their magnitudes"""
    scale = sum(abs(t) for t in terms)
    total = abs(sum(terms))
    return total / scale if scale > 0 else total


def schrodinger_residual(a: float, gamma, which: str = 'both', h: float = 1e-3) -> OdeResidual:
    """
    Residuals of -A'' + V_+ A = gamma^2 A and -B'' + V_- B = gamma^2 B in u = log a

    Args:
        a: Point a = e^u
        gamma: Spectral parameter, s = 1/2 + i gamma
        which: 'A', 'B' or 'both'; a component not asked for is reported as 0
        h: Finite-difference step in u, 1e-4 <= h <= 1e-2

    Returns:
        OdeResidual with residuals relative to the term magnitudes
    """
    a = validate_positive('a', a)
    h = _check_step(h)
    if which not in ('A', 'B', 'both'):
        raise DomainError(f"which must be 'A', 'B' or 'both', got {which!r}")
    gamma, s = _s_of_gamma(gamma)
    values_a, values_b = _stencil(a, s, h)
    v_plus, v_minus = potentials(math.log(a))
    g2 = gamma * gamma

    res_a = res_b = 0.0
    if which in ('A', 'both'):
        res_a = _relative(-_d2(values_a, h), v_plus * values_a[2], -g2 * values_a[2])
    if which in ('B', 'both'):
        res_b = _relative(-_d2(values_b, h), v_minus * values_b[2], -g2 * values_b[2])
    return OdeResidual(u=math.log(a), gamma=ComplexValue.of(gamma), residual_A=res_a,
                       residual_B=res_b, step=h)


def dirac_residual(a: float, gamma, h: float = 1e-3) -> OdeResidual:
    """
    Residuals of dA/du = -mu A - gamma B and dB/du = mu B + gamma A, mu = 2a
    """
    a = validate_positive('a', a)
    h = _check_step(h)
    gamma, s = _s_of_gamma(gamma)
    values_a, values_b = _stencil(a, s, h)
    mu = 2.0 * a
    res_a = _relative(_d1(values_a, h), mu * values_a[2], gamma * values_b[2])
    res_b = _relative(_d1(values_b, h), -mu * values_b[2], -gamma * values_a[2])
    return OdeResidual(u=math.log(a), gamma=ComplexValue.of(gamma), residual_A=res_a,
                       residual_B=res_b, step=h)


def ode_residual_check(a: float, gamma, tol: float = 1e-6, h: float = 1e-3) -> List[CheckReport]:
    """Schrodinger and Dirac residuals at one (a, gamma) as reports against 0"""
    schrodinger = schrodinger_residual(a, gamma, 'both', h)
    dirac = dirac_residual(a, gamma, h)
    params = {'a': a, 'gamma': complex(gamma).real, 'gamma_im': complex(gamma).imag}
    return [
        CheckReport.build('schrodinger_A', params, schrodinger.residual_A, 0.0, tol),
        CheckReport.build('schrodinger_B', params, schrodinger.residual_B, 0.0, tol),
        CheckReport.build('dirac_A', params, dirac.residual_A, 0.0, tol),
        CheckReport.build('dirac_B', params, dirac.residual_B, 0.0, tol),
    ]


def jost(a: float, s) -> Tuple[complex, complex]:
    """
    Jost functions from the Mellin integrals of phi_a^{+-} over (0, a):

        j(s) = a^{1/2-s} - sqrt(a) int_0^a phi_a^+(x) x^{-s} dx
        k(s) = i (a^{1/2-s} + sqrt(a) int_0^a phi_a^-(x) x^{-s} dx)

    Args:
        a: Endpoint
        s: Re s < 1

    Returns:
        Tuple (j_hat, k_hat)
    """
    a = validate_positive('a', a)
    validate_finite('s', s)
    s = complex(s)
    if s.real >= 1.0:
        raise AccuracyLossError(f"Jost integrals diverge for Re s >= 1, got {s}")
    root = math.sqrt(a)
    lead = a ** (0.5 - s)
    plus = log_mellin_head(lambda x: closed_phi(a, '+', x), a, -s)
    minus = log_mellin_head(lambda x: closed_phi(a, '-', x), a, -s)
    return complex(lead - root * plus), complex(1j * (lead + root * minus))


def jost_A_B(a: float, s) -> Tuple[complex, complex]:
    """
    A and B rebuilt from the Jost functions:

        A = (Gamma(s) j(s) + Gamma(1-s) j(1-s)) / 2
        B = (Gamma(s) k(s) - Gamma(1-s) k(1-s)) / 2
    """
    s = complex(s)
    j_s, k_s = jost(a, s)
    j_r, k_r = jost(a, 1.0 - s)
    g_s, g_r = gamma_complex(s), gamma_complex(1.0 - s)
    return 0.5 * (g_s * j_s + g_r * j_r), 0.5 * (g_s * k_s - g_r * k_r)


def jost_relation_check(a: float, s, tol: float = 1e-6) -> List[CheckReport]:
    """A and B from the Jost functions against their K-Bessel forms"""
    s = complex(s)
    point = spectral_point(a, s)
    rebuilt_a, rebuilt_b = jost_A_B(a, s)
    params = {'a': a, 'sigma': s.real, 'gamma': s.imag}
    return [
        CheckReport.build('jost_A_relation', params, rebuilt_a, point.A, tol),
        CheckReport.build('jost_B_relation', params, rebuilt_b, point.B, tol),
    ]


def jost_condition_check(gamma: float, a: float = 1e-3, tol: float = 1e-2) -> CheckReport:
    """j(1/2 + i gamma) a^{i gamma} -> 1 as a -> 0"""
    s = 0.5 + 1j * gamma
    j_hat, _ = jost(a, s)
    return CheckReport.build('jost_condition', {'a': a, 'gamma': gamma},
                             j_hat * a ** (s - 0.5), 1.0, tol)


def a_half_routes_check(a: float = 1.0, n: int = DEFAULT_N, tol: float = 1e-6) -> List[CheckReport]:
    """
    A_a(1/2) = sqrt(pi) e^{-2a} by three routes: K-Bessel, the Nystrom determinant
    ratio sqrt(pi) det(1-H_a) / det(1+H_a) and the Jost relation
    """
    a = validate_positive('a', a)
    bessel = spectral_point(a, 0.5).A
    ratio = math.sqrt(math.pi) * fredholm_det(a, '-', n=n) / fredholm_det(a, '+', n=n)
    via_jost, _ = jost_A_B(a, 0.5)
    params = {'a': a}
    closed = math.sqrt(math.pi) * math.exp(-2.0 * a)
    return [
        CheckReport.build('A_half_bessel', params, bessel, closed, tol),
        CheckReport.build('A_half_det_ratio', params, ratio, bessel, tol),
        CheckReport.build('A_half_jost', params, via_jost, bessel, tol),
    ]


def phase(gamma):
    """
    Scattering phase arg chi(1/2 + i gamma) = -2 Im log Gamma(1/2 + i gamma)

    The log-Gamma branch is continuous along the critical line, so phase(0) = 0 and
    the result is odd in gamma.
    """
    g = np.asarray(gamma, dtype=float)
    out = -2.0 * special.loggamma(0.5 + 1j * g).imag
    return out.item() if out.ndim == 0 else out


def phase_unwrapped(gammas: Sequence[float]) -> np.ndarray:
    """Principal arguments of chi(1/2 + i gamma) on an increasing grid from 0, unwrapped"""
    g = np.asarray(gammas, dtype=float)
    s = 0.5 + 1j * g
    principal = np.angle(special.gamma(1.0 - s) * special.rgamma(s))
    return np.unwrap(principal)


def b_on_line(a: float, gamma: float) -> float:
    """B_a(1/2 + i gamma), real on the critical line"""
    return float(spectral_point(a, 0.5 + 1j * gamma).B.real)


def b_derivative(a: float, gamma: float, h: float = 1e-5) -> float:
    """d/dgamma B_a(1/2 + i gamma) by central differences"""
    return (b_on_line(a, gamma + h) - b_on_line(a, gamma - h)) / (2.0 * h)


def find_B_zeros(a: float, gamma_range: Tuple[float, float], step: float = ZERO_SCAN_STEP) -> List[float]:
    """
    Real zeros of gamma -> B_a(1/2 + i gamma)

    Sign changes on a grid of the given step are polished with brentq to 1e-10.

    Args:
        a: Endpoint
        gamma_range: (lo, hi) within [-50, 50]
        step: Scan step

    Returns:
        Sorted roots; possibly empty
    """
    a = validate_positive('a', a)
    lo, hi = (float(g) for g in gamma_range)
    if not -MAX_GAMMA <= lo < hi <= MAX_GAMMA:
        raise DomainError(f"gamma range must satisfy -{MAX_GAMMA} <= lo < hi <= {MAX_GAMMA}")
    count = int(math.ceil((hi - lo) / step))
    grid = np.linspace(lo, hi, count + 1)
    # gamma = 0 is always a root; make it a grid point
    if lo < 0 < hi:
        grid = np.union1d(grid, [0.0])
    values = [b_on_line(a, g) for g in grid]

    roots = []
    for k, (g, v) in enumerate(zip(grid, values)):
        if v == 0.0:
            roots.append(float(g))
            continue
        if k + 1 < len(grid) and v * values[k + 1] < 0:
            roots.append(float(optimize.brentq(lambda t: b_on_line(a, t), g, grid[k + 1],
                                               xtol=ZERO_XTOL)))
    logger.debug(f"find_B_zeros a={a}: {len(roots)} roots in [{lo}, {hi}]")
    return sorted(roots)


def zero_rows(a: float, roots: Sequence[float]) -> List[list]:
    """Rows for `a,gamma_root,derivative_at_root`"""
    return [[a, root, b_derivative(a, root)] for root in roots]


def b_zero_orthogonality(a: float, roots: Sequence[float], tol: float = 1e-4) -> List[CheckReport]:
    """
    X_a(rho_1, conj rho_2) = 0 for distinct zeros rho_i = 1/2 + i gamma_i of B

    Each value is scaled by |E(rho_1)| |E(rho_2)| / |gamma_1 - gamma_2|. The same
    pair is also checked in flow form, X_a - X_upper = 2 int_a^upper (A A + B B) db / b
    with upper = flow_upper(a).
    """
    reports = []
    distinct = sorted(set(roots))
    upper = flow_upper(a)
    for i, g1 in enumerate(distinct):
        for g2 in distinct[i + 1:]:
            rho1, rho2 = 0.5 + 1j * g1, 0.5 + 1j * g2
            params = {'a': a, 'gamma_1': g1, 'gamma_2': g2}
            value = rep_kernel(a, rho1, rho2.conjugate())
            scale = abs(spectral_point(a, rho1).E) * abs(spectral_point(a, rho2).E) / abs(g1 - g2)
            if scale <= 0:
                scale = 1.0
            reports.append(CheckReport.build('b_zero_orthogonality', params, value / scale, 0.0, tol))
            difference = value - rep_kernel(upper, rho1, rho2.conjugate())
            flow = kernel_flow(a, upper, rho1, rho2.conjugate())
            reports.append(CheckReport.build('b_zero_flow', {**params, 'upper': upper},
                                             difference / scale, flow / scale, tol))
    return reports


def flow_upper(a: float) -> float:
    """U with pi e^{-4U} <= FLOW_TAIL, and U >= 2a"""
    return max(2.0 * a, 0.25 * math.log(math.pi / FLOW_TAIL))


def norm_flow_check(a: float, upper: float, tol: float = 1e-6) -> List[CheckReport]:
    """
    Norm flow at s = 1/2:

        X_a(1/2, 1/2) - X_upper(1/2, 1/2) = 2 int_a^upper (A^2 + B^2) db / b
        = pi (2 E_1(4a) - 2 E_1(4 upper))

    plus the full tail: X_a(1/2, 1/2) against the flow integral up to flow_upper(a).
    """
    a = validate_positive('a', a)
    upper = validate_positive('upper', upper)
    reports = [evaluator_norm_flow_check(a, upper, 0.5, tol)]
    flow = evaluator_norm_flow(a, upper, 0.5)
    closed = math.pi * (evaluator_norm_half(a) - evaluator_norm_half(upper))
    reports.append(CheckReport.build('norm_flow_closed', {'a': a, 'upper': upper}, flow, closed, tol))
    tail_upper = flow_upper(a)
    reports.append(CheckReport.build('norm_flow_tail', {'a': a, 'upper': tail_upper},
                                     evaluator_norm_flow(a, tail_upper, 0.5), evaluator_norm(a, 0.5), tol))
    return reports
