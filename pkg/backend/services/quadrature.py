"""
Quadrature Service - Gauss-Legendre panels and oscillatory tails

Three tools cover every integral the lab evaluates:

- `panel_integrate`: composite Gauss-Legendre over a finite interval
- `zero_panel_sum`: single-Bessel oscillatory tails, integrated between
  consecutive zeros and summed with repeated Euler averaging
- `bessel_product_tail`: products of two Bessel factors on [v0, inf), split into
  Hankel functions whose contours are rotated into the decaying half-plane
"""
import logging
import math
from functools import lru_cache
from typing import Callable, Sequence, Tuple

import numpy as np
from scipy import special

from utils.errors import ConvergenceError

logger = logging.getLogger(__name__)

DEFAULT_ORDER = 24
EULER_LEVELS = 24
TAIL_PANEL_WIDTH = 1.0
TAIL_MAX_PANELS = 6000
# Stop a rotated-contour integral once a panel contributes less than this
TAIL_STOP = 1e-17
BEAT_TOL = 1e-10


@lru_cache(maxsize=16)
def gauss_legendre(order: int) -> Tuple[np.ndarray, np.ndarray]:
    """Cached Gauss-Legendre nodes and weights on [-1, 1]"""
    return np.polynomial.legendre.leggauss(order)


def panel_nodes(lo: float, hi: float, panels: int, order: int = DEFAULT_ORDER):
    """Nodes and weights of a composite rule with equal panels on [lo, hi]"""
    t, w = gauss_legendre(order)
    edges = np.linspace(lo, hi, panels + 1)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    x = (mid[:, None] + half[:, None] * t[None, :]).ravel()
    wx = (half[:, None] * w[None, :]).ravel()
    return x, wx


def panel_integrate(func: Callable, lo: float, hi: float, width: float = 1.0,
                    order: int = DEFAULT_ORDER):
    """
    Composite Gauss-Legendre integral of a vectorized function

    Args:
        func: Vectorized integrand
        lo: Lower limit
        hi: Upper limit
        width: Maximum panel width
        order: Nodes per panel

    Returns:
        The integral (real or complex)
    """
    if hi == lo:
        return 0.0
    panels = max(1, int(math.ceil(abs(hi - lo) / width)))
    x, wx = panel_nodes(lo, hi, panels, order)
    total = np.dot(wx, func(x))
    return total.item() if np.ndim(total) == 0 else total


def log_mellin_head(func: Callable, hi: float, exponent: complex, order: int = DEFAULT_ORDER,
                    drop: float = 40.0):
    """
    int_0^hi func(x) x^{exponent} dx through x = e^w

    The substitution turns an algebraic (possibly complex) endpoint singularity into
    exponential decay e^{(exponent+1) w} as w -> -inf; requires Re(exponent) > -1.
    """
    rate = exponent.real + 1.0
    if rate <= 0:
        raise ConvergenceError(f"Mellin head diverges for exponent {exponent}")
    w_hi = math.log(hi)
    w_lo = w_hi - drop / rate

    def integrand(w):
        x = np.exp(w)
        return func(x) * np.exp((exponent + 1.0) * w)

    return panel_integrate(integrand, w_lo, w_hi, width=1.0, order=order)


def euler_average(partial_sums: np.ndarray, levels: int = EULER_LEVELS) -> Tuple[complex, float]:
    """
    Repeated neighbour averaging of partial sums of an alternating series

    Returns:
        Tuple of (accelerated limit, estimate of its error)
    """
    sums = np.asarray(partial_sums)
    levels = min(levels, len(sums) - 2)
    if levels < 1:
        raise ConvergenceError("Too few partial sums for Euler averaging")
    current = sums[-(levels + 2):]
    previous = current
    for _ in range(levels):
        previous = current
        current = 0.5 * (current[:-1] + current[1:])
    value = current[-1]
    error = abs(current[-1] - previous[-1])
    return value, float(error)


def zero_panel_sum(func: Callable, breakpoints: Sequence[float], order: int = DEFAULT_ORDER,
                   levels: int = EULER_LEVELS, tol: float = 1e-10):
    """
    int_{b_0}^inf func by panels between consecutive breakpoints (Bessel zeros)

    Args:
        func: Vectorized integrand whose sign alternates between breakpoints
        breakpoints: Increasing sequence b_0 < b_1 < ...
        order: Nodes per panel
        levels: Euler averaging depth
        tol: Absolute error budget for the accelerated tail

    Returns:
        Tuple of (integral, error estimate)
    """
    b = np.asarray(breakpoints, dtype=float)
    t, w = gauss_legendre(order)
    half = 0.5 * (b[1:] - b[:-1])
    mid = 0.5 * (b[1:] + b[:-1])
    x = mid[:, None] + half[:, None] * t[None, :]
    terms = (func(x) * w[None, :]).sum(axis=1) * half
    value, error = euler_average(np.cumsum(terms), levels)
    logger.debug(f"Zero-panel sum over {len(terms)} panels, error estimate {error:.2e}")
    if error > tol:
        raise ConvergenceError(f"Oscillatory tail error estimate {error:.2e} exceeds {tol:.2e}")
    return value, error


def _rotated_ray(func: Callable, v0: float, direction: int, order: int) -> complex:
    """int_{v0}^inf func(v) dv along v = v0 + i*direction*t, t >= 0"""
    t, w = gauss_legendre(order)
    factor = 1j * direction
    total = 0.0 + 0.0j
    quiet = 0
    for k in range(TAIL_MAX_PANELS):
        lo = k * TAIL_PANEL_WIDTH
        tt = lo + 0.5 * TAIL_PANEL_WIDTH * (t + 1.0)
        contrib = 0.5 * TAIL_PANEL_WIDTH * np.dot(w, func(v0 + factor * tt)) * factor
        total += contrib
        if abs(contrib) <= TAIL_STOP * max(1.0, abs(total)):
            quiet += 1
            if quiet >= 2:
                logger.debug(f"Rotated ray converged after {k + 1} panels")
                return total
        else:
            quiet = 0
    raise ConvergenceError(f"Rotated contour did not converge within {TAIL_MAX_PANELS} panels")


def _inverted_ray(func: Callable, v0: float, order: int) -> complex:
    """int_{v0}^inf func(v) dv through v = v0 / tau, for algebraically decaying integrands"""
    def mapped(tau):
        return func(v0 / tau) * v0 / (tau * tau)

    return panel_integrate(mapped, 0.0, 1.0, width=0.125, order=order)


def bessel_product_tail(amp: Callable, p_arg: Callable, q_arg: Callable, v0: float,
                        beat: float, orders: Tuple[int, int] = (1, 1),
                        order: int = DEFAULT_ORDER) -> float:
    """
    int_{v0}^inf amp(v) J_m(P(v)) J_n(Q(v)) dv for real amp, P, Q on the real axis

    With J = Re H^(1) on the real axis,
    J_m(P) J_n(Q) = 1/2 Re[H1_m(P) H1_n(Q)] + 1/2 Re[H1_m(P) H2_n(Q)].
    The first product decays in the upper half-plane. The second decays on the side
    given by the sign of the beat slope dP/dv - dQ/dv; when the beat vanishes it is
    non-oscillatory and integrated after inverting v.

    Args:
        amp, p_arg, q_arg: Callables analytic near [v0, inf) and accepting complex v
        v0: Start of the tail; P(v0), Q(v0) should be a few units at least
        beat: Asymptotic slope difference dP/dv - dQ/dv
        orders: Bessel orders (m, n)
        order: Nodes per panel

    Returns:
        The real tail integral
    """
    m, n = orders

    def same_side(v):
        p, q = p_arg(v), q_arg(v)
        return amp(v) * special.hankel1e(m, p) * special.hankel1e(n, q) * np.exp(1j * (p + q))

    def opposite_side(v):
        p, q = p_arg(v), q_arg(v)
        return amp(v) * special.hankel1e(m, p) * special.hankel2e(n, q) * np.exp(1j * (p - q))

    first = _rotated_ray(same_side, v0, +1, order)
    if abs(beat) > BEAT_TOL:
        second = _rotated_ray(opposite_side, v0, 1 if beat > 0 else -1, order)
    else:
        second = _inverted_ray(opposite_side, v0, order)
    return 0.5 * (first.real + second.real)
