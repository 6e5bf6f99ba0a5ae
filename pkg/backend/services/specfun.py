"""
Special Function Service - Bessel J/I/K, complex Gamma, E1 and Laguerre polynomials

Thin validated wrappers over scipy.special, plus the two routines scipy does not
provide in the form the lab needs: K-Bessel of complex order by quadrature of
its integral representation, and the I/J continuation through x = a.
"""
import logging
import math
import threading
from functools import lru_cache

import mpmath
import numpy as np
from scipy import special

from utils.errors import AccuracyLossError, DomainError, PoleError
from utils.validators import validate_finite, validate_positive

logger = logging.getLogger(__name__)

# K-Bessel quadrature: panel width and Gauss-Legendre order per panel
K_PANEL_WIDTH = 0.5
K_PANEL_ORDER = 24
# Integrand is truncated once the log-magnitude drops this far below its peak
K_LOG_DROP = 40.0
K_MAX_U = 60.0
K_MAX_IMAG = 100.0
# Above this estimated relative cancellation the mpmath route is used
K_CANCELLATION_LIMIT = 1e-11
K_MP_DPS = 30

_mp_local = threading.local()

MAX_LAGUERRE_DEGREE = 200


def bessel_j01(order: int, x):
    """
    J_0 or J_1 of a non-negative argument

    Args:
        order: 0 or 1
        x: Argument (scalar or array), x >= 0

    Returns:
        J_order(x)
    """
    if order not in (0, 1):
        raise DomainError(f"Bessel J order must be 0 or 1, got {order}")
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0) or not np.all(np.isfinite(arr)):
        raise DomainError("Bessel J argument must be finite and >= 0")
    out = special.j0(arr) if order == 0 else special.j1(arr)
    return out.item() if out.ndim == 0 else out


def bessel_i01(order: int, x):
    """
    I_0 or I_1 of a non-negative argument

    Args:
        order: 0 or 1
        x: Argument (scalar or array), x >= 0

    Returns:
        I_order(x)
    """
    if order not in (0, 1):
        raise DomainError(f"Bessel I order must be 0 or 1, got {order}")
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0) or not np.all(np.isfinite(arr)):
        raise DomainError("Bessel I argument must be finite and >= 0")
    out = special.i0(arr) if order == 0 else special.i1(arr)
    return out.item() if out.ndim == 0 else out


@lru_cache(maxsize=8)
def _gl_rule(order: int):
    return np.polynomial.legendre.leggauss(order)


def _k_truncation(nu: complex, x: float) -> float:
    """Upper limit U beyond which e^{-x cosh u + |Re nu| u} is below e^{-K_LOG_DROP} of its peak"""
    sigma = abs(nu.real)
    u_peak = math.asinh(sigma / x)
    peak = -x * math.cosh(u_peak) + sigma * u_peak
    u = max(u_peak, 1.0)
    while -x * math.cosh(u) + sigma * u > peak - K_LOG_DROP:
        u += 0.25
        if u > K_MAX_U:
            raise AccuracyLossError(
                f"K-Bessel truncation bound not met for order {nu}, x={x}"
            )
    return u


def _k_quadrature(nu: complex, x: float):
    """Panel Gauss-Legendre quadrature of int_0^U e^{-x cosh u} cosh(nu u) du"""
    upper = _k_truncation(nu, x)
    panels = max(1, int(math.ceil(upper / K_PANEL_WIDTH)))
    t, w = _gl_rule(K_PANEL_ORDER)
    edges = np.linspace(0.0, upper, panels + 1)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    u = (mid[:, None] + half[:, None] * t[None, :]).ravel()
    wu = (half[:, None] * w[None, :]).ravel()
    sigma = abs(nu.real)
    # cosh(nu u) e^{-x cosh u} written with the growing exponential factored out
    envelope = np.exp(-x * np.cosh(u) + sigma * u)
    phase = np.cosh(nu * u) * np.exp(-sigma * u)
    values = envelope * phase
    total = np.dot(wu, values)
    magnitude = np.dot(wu, np.abs(values))
    logger.debug(f"K quadrature nu={nu} x={x}: U={upper:.2f}, panels={panels}")
    return complex(total), float(magnitude)


def bessel_k_complex(s: complex, x: float) -> complex:
    """
    Modified Bessel K_s(x) of complex order and positive argument

    Computed as int_0^inf e^{-x cosh u} cosh(s u) du on Gauss-Legendre panels.
    When the oscillation of cosh(s u) cancels most of the integral the value is
    recomputed with mpmath.

    Args:
        s: Complex order, |Im s| <= 100
        x: Positive real argument

    Returns:
        K_s(x) as a complex number
    """
    validate_finite('s', s)
    x = validate_positive('x', x)
    nu = complex(s)
    if abs(nu.imag) > K_MAX_IMAG:
        raise DomainError(f"|Im s| must be <= {K_MAX_IMAG}, got {abs(nu.imag)}")
    if nu.imag == 0.0:
        # real order: positive integrand, scipy is accurate
        return complex(special.kv(nu.real, x))

    total, magnitude = _k_quadrature(nu, x)
    if total != 0 and magnitude / abs(total) * np.finfo(float).eps <= K_CANCELLATION_LIMIT:
        return total

    logger.debug(f"K quadrature cancellation for nu={nu}, x={x}; using mpmath")
    ctx = _mp_context()
    return complex(ctx.besselk(ctx.mpc(nu.real, nu.imag), x))


def _mp_context() -> mpmath.MPContext:
    """Per-thread mpmath context at K_MP_DPS; the global mpmath.mp is never touched"""
    ctx = getattr(_mp_local, 'ctx', None)
    if ctx is None:
        ctx = mpmath.MPContext()
        ctx.dps = K_MP_DPS
        _mp_local.ctx = ctx
    return ctx


def gamma_complex(s: complex) -> complex:
    """
    Gamma function of a complex argument

    Args:
        s: Complex argument, not a non-positive integer

    Returns:
        Gamma(s)
    """
    validate_finite('s', s)
    z = complex(s)
    if z.imag == 0.0 and z.real <= 0 and z.real == math.floor(z.real):
        raise PoleError(f"Gamma has a pole at {z.real:g}")
    return complex(special.gamma(z))


def rgamma_complex(s: complex) -> complex:
    """1/Gamma(s), entire"""
    validate_finite('s', s)
    return complex(special.rgamma(complex(s)))


def exp_integral_e1(x: float) -> float:
    """
    Exponential integral E1(x) = int_x^inf e^{-t}/t dt

    Args:
        x: Positive real argument

    Returns:
        E1(x)
    """
    x = validate_positive('x', x)
    return float(special.exp1(x))


def laguerre(n: int, x):
    """
    Laguerre polynomial L_n(x) by the three-term recurrence

    (n+1) L_{n+1} = (2n+1-x) L_n - n L_{n-1}

    Args:
        n: Degree, 0 <= n <= 200
        x: Real argument (scalar or array)

    Returns:
        L_n(x)
    """
    if not isinstance(n, (int, np.integer)) or n < 0 or n > MAX_LAGUERRE_DEGREE:
        raise DomainError(f"Laguerre degree must lie in [0, {MAX_LAGUERRE_DEGREE}], got {n}")
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if n == 0:
        return prev.item() if prev.ndim == 0 else prev
    cur = 1.0 - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 - x) * cur - k * prev) / (k + 1)
    return cur.item() if cur.ndim == 0 else cur


def laguerre_table(n_max: int, x) -> np.ndarray:
    """Rows L_0(x) .. L_{n_max}(x) from a single recurrence pass"""
    if n_max < 0 or n_max > MAX_LAGUERRE_DEGREE:
        raise DomainError(f"Laguerre degree must lie in [0, {MAX_LAGUERRE_DEGREE}], got {n_max}")
    x = np.asarray(x, dtype=float)
    table = np.empty((n_max + 1,) + x.shape)
    table[0] = 1.0
    if n_max >= 1:
        table[1] = 1.0 - x
    for k in range(1, n_max):
        table[k + 1] = ((2 * k + 1 - x) * table[k] - k * table[k - 1]) / (k + 1)
    return table


def jinc(u):
    """
    J_1(2 sqrt(u)) / sqrt(u), continued to u < 0 as I_1(2 sqrt(-u)) / sqrt(-u)

    Entire in u with value 1 at u = 0.
    """
    u = np.asarray(u, dtype=float)
    out = np.ones_like(u)
    pos = u > 1e-12
    neg = u < -1e-12
    small = ~(pos | neg)
    r = np.sqrt(np.abs(u))
    out[pos] = special.j1(2.0 * r[pos]) / r[pos]
    out[neg] = special.i1(2.0 * r[neg]) / r[neg]
    # series 1 - u/2 + u^2/12
    us = u[small]
    out[small] = 1.0 - us / 2.0 + us * us / 12.0
    return out.item() if out.ndim == 0 else out


def bessel_f(a: float, x):
    """
    f_a(x) = a J_1(2 sqrt(ax)) / sqrt(ax) on x > 0, zero for x < 0; f_a(0) = a

    Negative a reflects the support: f_a(x) = f_{-a}(-x).
    """
    x = np.asarray(x, dtype=float)
    if a < 0:
        return bessel_f(-a, -x)
    out = np.where(x >= 0, a * jinc(a * np.maximum(x, 0.0)), 0.0)
    return out.item() if out.ndim == 0 else out


def continued_bessel_pair(a: float, x):
    """
    (I_0(2v), I_1(2v)/v) with v = sqrt(a(a-x)) for x < a, continued to
    (J_0(2w), J_1(2w)/w) with w = sqrt(a(x-a)) for x > a

    Both components are entire in x; at x = a the value is (1, 1).

    Args:
        a: Endpoint, a > 0
        x: Real argument (scalar or array)

    Returns:
        Tuple (c0, c1) of arrays
    """
    x = np.asarray(x, dtype=float)
    u = a * (a - x)
    c0 = np.empty_like(u)
    c1 = np.empty_like(u)
    pos = u > 1e-12
    neg = u < -1e-12
    small = ~(pos | neg)
    v = np.sqrt(np.abs(u))
    c0[pos] = special.i0(2.0 * v[pos])
    c1[pos] = special.i1(2.0 * v[pos]) / v[pos]
    c0[neg] = special.j0(2.0 * v[neg])
    c1[neg] = special.j1(2.0 * v[neg]) / v[neg]
    us = u[small]
    # I0(2v) = 1 + u + u^2/4, I1(2v)/v = 1 + u/2 + u^2/12 with u = v^2
    c0[small] = 1.0 + us + us * us / 4.0
    c1[small] = 1.0 + us / 2.0 + us * us / 12.0
    if c0.ndim == 0:
        return c0.item(), c1.item()
    return c0, c1


def bessel_k_recurrence_residual(s: complex, x: float) -> float:
    """Relative residual of K_{s-1} - K_{s+1} = -(2s/x) K_s"""
    lhs = bessel_k_complex(s - 1, x) - bessel_k_complex(s + 1, x)
    rhs = -(2 * complex(s) / x) * bessel_k_complex(s, x)
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs))

