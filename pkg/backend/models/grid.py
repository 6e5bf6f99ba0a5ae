"""
Grid models - quadrature rules, sampled functions and Nystrom operators
"""
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from numpy.polynomial import legendre


@dataclass(frozen=True)
class Grid:
    """
    Gauss-Legendre rule on (lo, lo + a)

    Nodes are strictly increasing, weights positive and summing to the interval length.
    """
    a: float
    n: int
    nodes: np.ndarray
    weights: np.ndarray
    lo: float = 0.0

    @property
    def hi(self) -> float:
        return self.lo + self.a

    def integrate(self, values) -> complex:
        """Quadrature of sampled values"""
        total = np.dot(self.weights, values)
        return total.item() if np.ndim(total) == 0 else total

    def to_dict(self):
        """Convert to dictionary"""
        return {
            'a': self.a,
            'n': self.n,
            'lo': self.lo,
            'nodes': self.nodes.tolist(),
            'weights': self.weights.tolist(),
        }


@dataclass(frozen=True)
class GridFn:
    """
    Function sampled on a Grid

    `extend` evaluates the function off the grid when a natural interpolant exists
    (the Nystrom formula for integral-equation solutions, a closed form otherwise).
    Without it, off-grid values come from the Legendre interpolant through the nodes.
    """
    grid: Grid
    values: np.ndarray
    extend: Optional[Callable[[np.ndarray], np.ndarray]] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if len(self.values) != self.grid.n:
            raise ValueError(f"GridFn has {len(self.values)} values for a grid of {self.grid.n} nodes")

    @property
    def is_complex(self) -> bool:
        return np.iscomplexobj(self.values) and bool(np.any(np.imag(self.values) != 0))

    def evaluate(self, x) -> np.ndarray:
        """Evaluate at arbitrary points inside the grid interval"""
        x = np.asarray(x, dtype=float)
        if self.extend is not None:
            return self.extend(x)
        t = 2.0 * (x - self.grid.lo) / self.grid.a - 1.0
        tn = 2.0 * (self.grid.nodes - self.grid.lo) / self.grid.a - 1.0
        coef = legendre.legfit(tn, self.values, self.grid.n - 1)
        return legendre.legval(t, coef)

    def integral(self) -> complex:
        return self.grid.integrate(self.values)

    def norm2(self) -> float:
        """Squared L2 norm"""
        return float(self.grid.integrate(np.abs(self.values) ** 2))

    def csv_rows(self):
        """Rows for the `x,re[,im]` CSV layout"""
        if self.is_complex:
            header = ['x', 're', 'im']
            rows = [[x, v.real, v.imag] for x, v in zip(self.grid.nodes, self.values)]
        else:
            header = ['x', 're']
            rows = [[x, float(np.real(v))] for x, v in zip(self.grid.nodes, self.values)]
        return header, rows


@dataclass(frozen=True)
class KernelOp:
    """
    Symmetrized Nystrom matrix sqrt(w_i w_j) k(x_i x_j) with its eigen-decomposition

    Eigenvalues are sorted by decreasing absolute value.
    """
    grid: Grid
    kernel_id: str
    matrix: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray = field(repr=False)

    @property
    def spectral_radius(self) -> float:
        return float(np.abs(self.eigenvalues[0]))

    def det(self, sign: int) -> float:
        """det(1 + sign*K) as an eigenvalue product"""
        return float(np.prod(1.0 + sign * self.eigenvalues))

    def log_det(self, sign: int) -> float:
        return float(np.sum(np.log1p(sign * self.eigenvalues)))


@dataclass(frozen=True)
class ExpansionPair:
    """Components (f, g) of the isometric expansion, both sampled on (0, 2B)"""
    f: GridFn
    g: GridFn

    def norm2(self) -> float:
        return self.f.norm2() + self.g.norm2()

    def csv_rows(self):
        header = ['y', 'f_re', 'g_re']
        rows = [[y, float(np.real(fv)), float(np.real(gv))]
                for y, fv, gv in zip(self.f.grid.nodes, self.f.values, self.g.values)]
        return header, rows


@dataclass(frozen=True)
class ResolventDisc:
    """Discretized resolvent of the sine kernel on (-1, 1)"""
    s: float
    grid: Grid
    R: np.ndarray = field(repr=False)
    D: np.ndarray = field(repr=False)

    def value(self, x: float, y: float) -> float:
        """Kernel value R(x, y) via the Nystrom interpolant in both variables"""
        from services.dirichlet import resolvent_value
        return resolvent_value(self, x, y)
