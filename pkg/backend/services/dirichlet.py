"""
Dirichlet Service - resolvent of the sine kernel on (-1, 1) and the reproducing
kernel of Paley-Wiener space normed on the complement of (-1, 1)

D_s(x, y) = sin(s(x - y)) / (pi (x - y)). The resolvent R = (1 - D)^{-1} - 1 satisfies
R = D + D R on (-1, 1); the reproducing kernel X_s of PW_s with norm
int_{|t|>1} |f|^2 satisfies the same equation, so both agree at real points.
"""
import logging
import math
from typing import List, Tuple

import numpy as np
from scipy import integrate, linalg

from models import CheckReport, ResolventDisc
from utils.errors import DomainError, SingularSystemError
from utils.validators import validate_grid_size, validate_positive
from .discretize import make_grid

logger = logging.getLogger(__name__)

DEFAULT_RESOLVENT_N = 200
CONDITION_LIMIT = 1e10
GRAM_COND_WARN = 1e8
GRAM_COND_LIMIT = 1e14
# Sinc-basis doubling: start, ceiling and the stopping change
DEFAULT_M = 40
MAX_M = 320
DOUBLING_TOL = 1e-4
GRAM_NODES = 96
SAMPLE_POINTS = (-0.8, -0.4, 0.0, 0.4, 0.8)

COMPARISON_CSV_HEADER = ['s', 'x', 'y', 'resolvent', 'repkernel', 'rel_err']


def sine_kernel(s: float, x, y) -> np.ndarray:
    """D_s(x, y), with the diagonal value s/pi"""
    u = np.subtract.outer(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    return (s / math.pi) * np.sinc(s * u / math.pi)


def check_bandwidth(s: float, n: int) -> float:
    """Positive s resolvable by an n-node Nystrom grid on (-1, 1)"""
    s = validate_positive('s', s)
    if s > math.pi * n / 8.0:
        raise DomainError(f"s={s} exceeds the resolution guard pi*n/8 = {math.pi * n / 8.0:.3f}")
    return s


def dirichlet_resolvent(s: float, n: int = DEFAULT_RESOLVENT_N) -> ResolventDisc:
    """
    Nystrom resolvent of the sine kernel on (-1, 1)

    Args:
        s: Bandwidth, s <= pi n / 8
        n: Gauss-Legendre node count

    Returns:
        ResolventDisc holding R and D at the nodes (kernel values, not weighted)
    """
    n = validate_grid_size(n)
    s = check_bandwidth(s, n)
    grid = make_grid(2.0, n, lo=-1.0)
    root_w = np.sqrt(grid.weights)
    D = sine_kernel(s, grid.nodes, grid.nodes)
    system = np.eye(n) - root_w[:, None] * D * root_w[None, :]
    cond = np.linalg.cond(system)
    if not np.isfinite(cond) or cond > CONDITION_LIMIT:
        raise SingularSystemError(f"1 - D_s is near singular at s={s} (cond={cond:.2e})")
    if cond > CONDITION_LIMIT * 1e-4:
        logger.warning(f"Sine-kernel resolvent poorly conditioned at s={s}: cond={cond:.2e}")
    inverse = linalg.inv(system)
    scaled = inverse - np.eye(n)
    R = scaled / np.outer(root_w, root_w)
    R = 0.5 * (R + R.T)
    logger.debug(f"Dirichlet resolvent s={s}, n={n}, cond={cond:.2e}")
    return ResolventDisc(s=s, grid=grid, R=R, D=D)


def resolvent_value(disc: ResolventDisc, x: float, y: float) -> float:
    """
    R(x, y) = D(x, y) + v_x^T (1 - M)^{-1} v_y with v_x = sqrt(w) D(x, t)

    Uses (1 - M)^{-1} = 1 + sqrt(w) R sqrt(w) from the stored node values.
    """
    grid = disc.grid
    root_w = np.sqrt(grid.weights)
    vx = root_w * sine_kernel(disc.s, x, grid.nodes)
    vy = root_w * sine_kernel(disc.s, y, grid.nodes)
    inner = vy + (root_w[:, None] * disc.R * root_w[None, :]) @ vy
    return float(sine_kernel(disc.s, x, y) + vx @ inner)


# ---------------------------------------------------------------------------
# Sinc-basis oracle
# ---------------------------------------------------------------------------

class SincBasis:
    """
    e_k(t) = D_s(t, k pi / s), |k| <= M, with the Gram matrix of int_{|t|>1} e_k e_l

    Over the whole line the e_k are orthogonal with norm^2 s/pi, so the Gram matrix is
    (s/pi) I - int_{-1}^{1} e_k e_l.
    """

    def __init__(self, s: float, M: int):
        self.s = validate_positive('s', s)
        self.M = M
        self.centers = np.arange(-M, M + 1) * math.pi / self.s
        grid = make_grid(2.0, GRAM_NODES, lo=-1.0)
        inner = self.evaluate(grid.nodes)
        self.gram = (self.s / math.pi) * np.eye(2 * M + 1) - (inner * grid.weights[None, :]) @ inner.T
        self.gram = 0.5 * (self.gram + self.gram.T)
        self.condition = float(np.linalg.cond(self.gram))
        if not np.isfinite(self.condition) or self.condition > GRAM_COND_LIMIT:
            raise SingularSystemError(f"Sinc Gram matrix singular at s={s}, M={M}")
        if self.condition > GRAM_COND_WARN:
            logger.warning(f"Sinc Gram matrix conditioning {self.condition:.2e} at s={s}, M={M}")
        self._factor = linalg.cho_factor(self.gram)

    def evaluate(self, t) -> np.ndarray:
        """Rows e_k(t)"""
        return sine_kernel(self.s, self.centers, np.atleast_1d(np.asarray(t, dtype=float)))

    def coefficients(self, x) -> np.ndarray:
        """Expansion coefficients G^{-1} e(x) of the kernel X(x, .)"""
        return linalg.cho_solve(self._factor, self.evaluate(x))

    def kernel(self, x, y) -> np.ndarray:
        """sum_kl (G^{-1})_kl e_k(x) e_l(y)"""
        return self.coefficients(x).T @ self.evaluate(y)


def mpw_kernel(s: float, x, y, M: int) -> np.ndarray:
    return SincBasis(s, M).kernel(x, y)


def mpw_kernel_oracle(s: float, x: float, y: float, M: int = DEFAULT_M) -> float:
    """
    Reproducing kernel X_s(x, y) for x, y in (-1, 1) by sinc-basis Gram inversion

    M is doubled from the given value until the kernel value moves less than 1e-4.

    Args:
        s: Bandwidth
        x: First point in (-1, 1)
        y: Second point in (-1, 1)
        M: Starting basis half-size

    Returns:
        The kernel value at the largest M reached
    """
    if not (-1.0 < x < 1.0 and -1.0 < y < 1.0):
        raise DomainError(f"x, y must lie in (-1, 1), got ({x}, {y})")
    value = float(mpw_kernel(s, x, y, M)[0, 0])
    while M < MAX_M:
        M *= 2
        refined = float(mpw_kernel(s, x, y, M)[0, 0])
        change = abs(refined - value)
        value = refined
        if change < DOUBLING_TOL:
            break
    else:
        logger.warning(f"Sinc basis at M={M} still moves the kernel at s={s}, ({x}, {y})")
    logger.debug(f"mPW kernel s={s} at ({x}, {y}) settled at M={M}")
    return value


def resolvent_identity_residual(s: float, x: float, y: float, M: int = DEFAULT_M) -> float:
    """X_s(x, y) - D_s(x, y) - int_{-1}^{1} X_s(x, t) D_s(t, y) dt for the sinc-basis kernel"""
    basis = SincBasis(s, M)
    grid = make_grid(2.0, GRAM_NODES, lo=-1.0)
    row = basis.kernel(x, grid.nodes)[0]
    integral = float(np.dot(grid.weights * row, sine_kernel(s, grid.nodes, y)))
    return float(basis.kernel(x, y)[0, 0] - sine_kernel(s, x, y) - integral)


def reproduction_sides(s: float, j: int, x: float, M: int = DEFAULT_M) -> Tuple[float, float]:
    """
    (int_{|t|>1} e_j(t) X_s(x, t) dt, e_j(x))

    The outer integral is the whole-line inner product (s/pi) c_j minus the part over
    (-1, 1), which is taken by adaptive quadrature rather than the Gram rule.
    """
    basis = SincBasis(s, M)
    if abs(j) > M:
        raise DomainError(f"|j| must be <= M={M}")
    index = j + M
    coef = basis.coefficients(x)[:, 0]
    inner, _ = integrate.quad(lambda t: basis.evaluate(t)[index, 0] * float(coef @ basis.evaluate(t)[:, 0]),
                              -1.0, 1.0, epsabs=1e-12, epsrel=1e-12, limit=200)
    return (s / math.pi) * coef[index] - inner, float(basis.evaluate(x)[index, 0])


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

def comparison_rows(s: float, n: int = DEFAULT_RESOLVENT_N, M: int = DEFAULT_M,
                    points=SAMPLE_POINTS) -> List[list]:
    """Rows `s,x,y,resolvent,repkernel,rel_err` over a real sample grid"""
    disc = dirichlet_resolvent(s, n)
    rows = []
    for x in points:
        for y in points:
            r = disc.value(x, y)
            k = mpw_kernel_oracle(s, x, y, M)
            rows.append([s, x, y, r, k, abs(r - k) / max(abs(r), abs(k), 1e-300)])
    return rows


def dirichlet_checks(s: float, n: int = DEFAULT_RESOLVENT_N, M: int = DEFAULT_M,
                     tol: float = 1e-3) -> List[CheckReport]:
    """
    Resolvent against the sinc-basis kernel on the sample grid, the resolvent
    identity for the oracle, diagonal bounds and reproduction of a basis element
    """
    disc = dirichlet_resolvent(s, n)
    reports = []
    for x in SAMPLE_POINTS:
        for y in SAMPLE_POINTS:
            reports.append(CheckReport.build('resolvent_equals_kernel', {'s': s, 'x': x, 'y': y},
                                             disc.value(x, y), mpw_kernel_oracle(s, x, y, M), tol))
    reports.append(CheckReport.build('resolvent_symmetry', {'s': s},
                                     float(np.max(np.abs(disc.R - disc.R.T))), 0.0, 1e-12))
    diagonal = min(disc.value(x, x) for x in SAMPLE_POINTS)
    reports.append(CheckReport.build('resolvent_diagonal_bound', {'s': s},
                                     min(0.0, diagonal - s / math.pi), 0.0, 1e-12))
    reports.append(CheckReport.build('resolvent_identity', {'s': s, 'x': 0.2, 'y': -0.4},
                                     resolvent_identity_residual(s, 0.2, -0.4, 2 * M), 0.0, tol))
    lhs, rhs = reproduction_sides(s, 1, 0.3, M)
    reports.append(CheckReport.build('kernel_reproduction', {'s': s, 'j': 1, 'x': 0.3}, lhs, rhs, tol))
    return reports
