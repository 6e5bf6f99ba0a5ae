"""
Discretization Service - quadrature grids, the H-transform on concrete functions,
Nystrom operators and the phi/psi integral-equation solvers
"""
import logging
import math
from typing import Callable, Optional

import numpy as np
from scipy import linalg, special

from models import Grid, GridFn, KernelOp
from utils.errors import DomainError, SingularSystemError
from utils.validators import (
    validate_grid_size,
    validate_kernel_id,
    validate_positive,
    validate_sign,
)
from .quadrature import gauss_legendre, panel_nodes
from .specfun import continued_bessel_pair

logger = logging.getLogger(__name__)

DEFAULT_N = 64
# Truncation target for apply_H_to on inputs with unbounded support
TAIL_BOUND = 1e-10
# Residual condition number above which a solve is reported as near singular
CONDITION_LIMIT = 1e12


def make_grid(a: float, n: int, lo: float = 0.0) -> Grid:
    """
    Gauss-Legendre grid on (lo, lo + a)

    Args:
        a: Interval length, a > 0
        n: Node count, 4 <= n <= 4096
        lo: Left endpoint

    Returns:
        Grid with increasing nodes
    """
    a = validate_positive('a', a)
    n = validate_grid_size(n)
    t, w = gauss_legendre(n)
    nodes = lo + 0.5 * a * (t + 1.0)
    weights = 0.5 * a * w
    return Grid(a=a, n=n, nodes=nodes, weights=weights, lo=lo)


def standard_kernel(u):
    """J_0(2 sqrt(u)) for u = xy >= 0"""
    return special.j0(2.0 * np.sqrt(np.maximum(u, 0.0)))


def extended_kernel(u):
    """Kernel of the extended operator; see extended.ext_kernel"""
    from .extended import ext_kernel
    return ext_kernel(u)


KERNELS = {
    'standard': standard_kernel,
    'extended': extended_kernel,
}


def _kernel_function(kernel_id: str, kernel: Optional[Callable]) -> Callable:
    validate_kernel_id(kernel_id)
    if kernel_id == 'custom':
        if kernel is None:
            raise DomainError("custom kernel requested without a kernel function")
        return kernel
    return KERNELS[kernel_id]


def apply_H(f: GridFn, x_out) -> np.ndarray:
    """
    (Hf)(x) = int_0^b J_0(2 sqrt(xy)) f(y) dy by grid quadrature

    Args:
        f: Samples of a function supported in the grid interval
        x_out: Points x >= 0

    Returns:
        Array of transform values
    """
    x = np.atleast_1d(np.asarray(x_out, dtype=float))
    kernel = standard_kernel(np.outer(x, f.grid.nodes))
    return kernel @ (f.grid.weights * f.values)


def truncation_point(decay: float, scale: float = 1.0) -> float:
    """b with scale * e^{-decay b} / decay <= TAIL_BOUND"""
    decay = validate_positive('decay', decay)
    return max(1.0, math.log(scale / (decay * TAIL_BOUND)) / decay)


def apply_H_to(func: Callable, x_out, decay: float, scale: float = 1.0,
               order: int = 24, kernel: Optional[Callable] = None) -> np.ndarray:
    """
    H applied to a function with unbounded support and tail |f(y)| <= scale e^{-decay y}

    The integral is truncated where the analytic tail bound drops below 1e-10 and
    integrated on equal Gauss-Legendre panels. `kernel` replaces J_0(2 sqrt(u)) by
    another function of u = xy.
    """
    kernel = kernel or standard_kernel
    b = truncation_point(decay, scale)
    x = np.atleast_1d(np.asarray(x_out, dtype=float))
    # J_0(2 sqrt(xy)) has about sqrt(x b)/pi oscillations on (0, b)
    panels = max(4, int(math.ceil(2.0 * math.sqrt(max(x.max(), 1.0) * b))))
    y, wy = panel_nodes(0.0, b, panels, order)
    logger.debug(f"apply_H_to: truncation b={b:.2f}, {panels} panels of order {order}")
    return kernel(np.outer(x, y)) @ (wy * func(y))


def nystrom(a: float, n: int = DEFAULT_N, kernel_id: str = 'standard',
            kernel: Optional[Callable] = None) -> KernelOp:
    """
    Symmetrized Nystrom discretization of a kernel k(xy) on (0, a)

    Args:
        a: Right endpoint
        n: Node count
        kernel_id: standard | extended | custom
        kernel: Function of u = xy, required for kernel_id == 'custom'

    Returns:
        KernelOp with eigenvalues sorted by decreasing |lambda|
    """
    k = _kernel_function(kernel_id, kernel)
    grid = make_grid(a, n)
    root_w = np.sqrt(grid.weights)
    matrix = root_w[:, None] * k(np.outer(grid.nodes, grid.nodes)) * root_w[None, :]
    matrix = 0.5 * (matrix + matrix.T)
    try:
        values, vectors = linalg.eigh(matrix)
    except linalg.LinAlgError as e:
        raise SingularSystemError(f"Eigen-decomposition failed for a={a}, n={n}: {e}")
    order = np.argsort(-np.abs(values), kind='stable')
    return KernelOp(grid=grid, kernel_id=kernel_id, matrix=matrix,
                    eigenvalues=values[order], eigenvectors=vectors[:, order])


def _solve_second_kind(grid: Grid, sign: int, rhs: np.ndarray, kernel: Callable) -> np.ndarray:
    """Solve f + sign * int_0^a k(x y) f(y) dy = rhs on the grid nodes"""
    system = np.eye(grid.n) + sign * kernel(np.outer(grid.nodes, grid.nodes)) * grid.weights[None, :]
    try:
        cond = np.linalg.cond(system)
    except np.linalg.LinAlgError as e:
        raise SingularSystemError(f"Condition estimate failed: {e}")
    if not np.isfinite(cond) or cond > CONDITION_LIMIT:
        raise SingularSystemError(f"Second-kind system is near singular (cond={cond:.2e})")
    return linalg.solve(system, rhs)


def _nystrom_extension(grid: Grid, sign: int, values: np.ndarray, rhs_func: Callable,
                       kernel: Callable) -> Callable:
    """Off-grid values f(x) = rhs(x) - sign * sum_j w_j k(x y_j) f_j"""
    def extend(x):
        x = np.asarray(x, dtype=float)
        flat = np.atleast_1d(x)
        out = rhs_func(flat) - sign * kernel(np.outer(flat, grid.nodes)) @ (grid.weights * values)
        return out.reshape(x.shape) if x.ndim else out[0]
    return extend


def solve_phi(a: float, sign: str, grid: Optional[Grid] = None, n: int = DEFAULT_N) -> GridFn:
    """
    phi_a^{+-} solving phi +- H_a phi = J_0(2 sqrt(a x)) on (0, a)

    Args:
        a: Right endpoint
        sign: '+' or '-'
        grid: Grid on (0, a); built from n when omitted

    Returns:
        GridFn carrying the Nystrom interpolant as its extension
    """
    sgn = validate_sign(sign)
    grid = grid or make_grid(a, n)

    def rhs(x):
        return standard_kernel(a * np.asarray(x))

    values = _solve_second_kind(grid, sgn, rhs(grid.nodes), standard_kernel)
    return GridFn(grid=grid, values=values,
                  extend=_nystrom_extension(grid, sgn, values, rhs, standard_kernel))


def solve_psi(a: float, sign: str, grid: Optional[Grid] = None, n: int = DEFAULT_N) -> GridFn:
    """psi_a^{+-} solving psi +- H_a psi = 1 on (0, a)"""
    sgn = validate_sign(sign)
    grid = grid or make_grid(a, n)

    def rhs(x):
        return np.ones_like(np.asarray(x, dtype=float))

    values = _solve_second_kind(grid, sgn, rhs(grid.nodes), standard_kernel)
    return GridFn(grid=grid, values=values,
                  extend=_nystrom_extension(grid, sgn, values, rhs, standard_kernel))


def closed_phi(a: float, sign: str, x):
    """
    phi_a^{+-}(x) = I_0(2 sqrt(a(a-x))) -+ a I_1(2 sqrt(a(a-x))) / sqrt(a(a-x))

    Continued through x = a to the J-branch; phi_a^{+-}(a) = 1 -+ a.
    """
    sgn = validate_sign(sign)
    a = validate_positive('a', a)
    c0, c1 = continued_bessel_pair(a, x)
    return c0 - sgn * a * c1


def closed_phi_fn(a: float, sign: str, grid: Grid) -> GridFn:
    """closed_phi sampled on a grid, extended by the closed form itself"""
    return GridFn(grid=grid, values=np.asarray(closed_phi(a, sign, grid.nodes)),
                  extend=lambda x: closed_phi(a, sign, x))


def interpolate(fn: GridFn, x) -> np.ndarray:
    """Off-grid values of a sampled function (Nystrom or Legendre interpolant)"""
    return fn.evaluate(x)


def rs_means(a: float, n: int = DEFAULT_N):
    """
    r(a) = 1 + 1/2 int_0^a (phi^- - phi^+) and s(a) = 1/2 int_0^a (phi^+ + phi^-)
    from Nystrom solutions

    Returns:
        Tuple (r, s)
    """
    grid = make_grid(a, n)
    plus = solve_phi(a, '+', grid)
    minus = solve_phi(a, '-', grid)
    r = 1.0 + 0.5 * grid.integrate(minus.values - plus.values)
    s = 0.5 * grid.integrate(plus.values + minus.values)
    return float(r), float(s)


def self_adjointness_gap(f: Callable, g: Callable, support: float, n: int = 256) -> float:
    """
    Relative gap between int (Hf) g and int f (Hg) for f, g supported in (0, support)
    """
    grid = make_grid(validate_positive("support", support), n)
    fv = f(grid.nodes)
    gv = g(grid.nodes)
    hf = apply_H(GridFn(grid, fv), grid.nodes)
    hg = apply_H(GridFn(grid, gv), grid.nodes)
    left = grid.integrate(hf * gv)
    right = grid.integrate(fv * hg)
    return abs(left - right) / max(abs(left), abs(right), 1e-300)
