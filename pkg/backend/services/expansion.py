"""
Expansion Service - the isometric expansion k <-> (f, g), the psi-map,
the Laguerre route and members of K_a

Conventions: for k supported in (0, B), f and g live on (0, 2B) and

    f(y) = 1/2 k(y/2) + 1/2 int_{y/2}^B (J_0(w) - sqrt(y/(2x-y)) J_1(w)) k(x) dx
    g(y) = 1/2 k(y/2) - 1/2 int_{y/2}^B (J_0(w) + sqrt(y/(2x-y)) J_1(w)) k(x) dx

with w = sqrt(y(2x-y)). H acts as (f, g) -> (f, -g). The Laguerre route
k = sum c_n L_n(2x) e^{-x} gives the same pair with f = sum c_{2m} phi_m and
g = sum c_{2m+1} phi_m, since psi(phi_m) = phi_{2m}.
"""
import logging
import math
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial import legendre
from scipy import special

from models import CheckReport, ExpansionPair, GridFn
from utils.errors import AccuracyLossError, DomainError
from utils.validators import validate_positive
from .discretize import DEFAULT_N, apply_H, make_grid
from .quadrature import panel_integrate, panel_nodes
from .specfun import bessel_f, laguerre_table

logger = logging.getLogger(__name__)

# Panel width in t for the square-root substitutions
SUBST_PANEL = 0.05
SUBST_ORDER = 16
SUPPORT_TOL = 1e-8
LAGUERRE_MAX = 200
LAGUERRE_LOSS = 1e-10
# Panels for moment integrals against Laguerre functions
MOMENT_PANEL = 0.02
# K_a elements: window of the convolution tail and the cutoff in sqrt(x - a)
CONV_DECAY = 40.0
CUT_SCALE = 10.0
TAIL_PANEL = 0.25


# ---------------------------------------------------------------------------
# Sampling helpers
# ---------------------------------------------------------------------------

def smooth_cutoff(x, start: float, end: float):
    """C-infinity step: 1 for x <= start, 0 for x >= end"""
    x = np.asarray(x, dtype=float)
    t = np.clip((x - start) / (end - start), 0.0, 1.0)

    def bump(v):
        return np.where(v > 0, np.exp(-1.0 / np.where(v > 0, v, 1.0)), 0.0)

    up, down = bump(1.0 - t), bump(t)
    return up / (up + down)


def sample(func: Callable, support: float, n: int = DEFAULT_N, lo: float = 0.0) -> GridFn:
    """GridFn of a closed-form function on (lo, support), zero outside"""
    grid = make_grid(support - lo, n, lo=lo)

    def extend(x):
        x = np.asarray(x, dtype=float)
        inside = (x >= lo) & (x <= support)
        return np.where(inside, func(np.clip(x, lo, support)), 0.0)

    return GridFn(grid=grid, values=np.asarray(func(grid.nodes), dtype=float), extend=extend)


def gridfn_from_samples(xs: Sequence[float], values: Sequence[float], n: int = DEFAULT_N) -> GridFn:
    """GridFn on (0, max x) from `x,value` samples, linearly interpolated and zero outside"""
    xs = np.asarray(xs, dtype=float)
    values = np.asarray(values, dtype=float)
    order = np.argsort(xs)
    xs, values = xs[order], values[order]
    if len(xs) < 2 or xs[0] < 0:
        raise DomainError("Need at least two samples with x >= 0")
    return sample(lambda x: np.interp(x, xs, values, left=0.0, right=0.0), float(xs[-1]), n)


def _interpolant(fn: GridFn) -> Callable:
    """Legendre interpolant through the grid values, zero outside the grid interval"""
    grid = fn.grid
    tn = 2.0 * (grid.nodes - grid.lo) / grid.a - 1.0
    coef = legendre.legfit(tn, np.real(fn.values), grid.n - 1)

    def evaluate(x):
        x = np.asarray(x, dtype=float)
        t = 2.0 * (x - grid.lo) / grid.a - 1.0
        inside = (t >= -1.0) & (t <= 1.0)
        return np.where(inside, legendre.legval(np.clip(t, -1.0, 1.0), coef), 0.0)

    return evaluate


def _evaluator(fn: GridFn) -> Callable:
    if fn.extend is not None:
        return fn.evaluate
    return _interpolant(fn)


def _check_support(k: GridFn) -> Tuple[float, float]:
    lo, hi = k.grid.lo, k.grid.hi
    if lo < 0:
        raise DomainError(f"Input support must lie in (0, inf), got lo={lo}")
    peak = float(np.max(np.abs(k.values))) or 1.0
    edge = float(np.abs(k.evaluate(np.array([hi])))[0])
    if edge > SUPPORT_TOL * peak:
        raise DomainError(f"Support violation: |k({hi})| = {edge:.2e} does not vanish")
    return lo, hi


# ---------------------------------------------------------------------------
# Forward and inverse maps
# ---------------------------------------------------------------------------

def _t_rule(t_lo: float, t_hi: float):
    panels = max(1, int(math.ceil((t_hi - t_lo) / SUBST_PANEL)))
    return panel_nodes(t_lo, t_hi, panels, SUBST_ORDER)


def forward_values(k: Callable, lo: float, hi: float, y) -> Tuple[np.ndarray, np.ndarray]:
    """
    (f(y), g(y)) for k supported in [lo, hi], through x = y/2 + t^2:

        f(y) = 1/2 k(y/2) + 1/2 int (2t J_0(ct) - c J_1(ct)) k(y/2 + t^2) dt
        g(y) = 1/2 k(y/2) - 1/2 int (2t J_0(ct) + c J_1(ct)) k(y/2 + t^2) dt

    with c = sqrt(2y).
    """
    y = np.atleast_1d(np.asarray(y, dtype=float))
    f = np.zeros_like(y)
    g = np.zeros_like(y)
    for i, yi in enumerate(y):
        half = 0.5 * yi
        direct = 0.5 * float(k(np.array([half]))[0]) if lo <= half <= hi else 0.0
        t_lo = math.sqrt(max(lo - half, 0.0))
        t_hi = math.sqrt(max(hi - half, 0.0))
        if t_hi <= t_lo:
            f[i] = g[i] = direct
            continue
        t, wt = _t_rule(t_lo, t_hi)
        c = math.sqrt(2.0 * yi)
        kv = wt * k(half + t * t)
        j0_part = np.dot(kv, 2.0 * t * special.j0(c * t))
        j1_part = np.dot(kv, c * special.j1(c * t))
        f[i] = direct + 0.5 * (j0_part - j1_part)
        g[i] = direct - 0.5 * (j0_part + j1_part)
    return f, g


def forward(k: GridFn, n_out: Optional[int] = None) -> ExpansionPair:
    """
    Expansion pair of a smooth k supported in the grid interval (lo, B)

    Args:
        k: Sampled input; its extension (or Legendre interpolant) is used off-grid
        n_out: Nodes on the output interval (0, 2B)

    Returns:
        ExpansionPair whose components carry the forward formula as their extension
    """
    lo, hi = _check_support(k)
    k_eval = _evaluator(k)
    grid = make_grid(2.0 * hi, n_out or max(128, 2 * k.grid.n))
    f, g = forward_values(k_eval, lo, hi, grid.nodes)
    return ExpansionPair(
        f=GridFn(grid, f, extend=lambda y: forward_values(k_eval, lo, hi, y)[0]),
        g=GridFn(grid, g, extend=lambda y: forward_values(k_eval, lo, hi, y)[1]),
    )


def _half_inverse(func: Callable, x: float, sign: float, upper: float) -> float:
    """
    func(2x) + sign/2 int_0^{2x} (J_0 -+ sqrt(y/(2x-y)) J_1) func(y) dy with y = 2x - t^2;
    sign +1 for the f-part, -1 for the g-part
    """
    if x <= 0:
        return 0.0
    direct = float(func(np.array([2.0 * x]))[0]) if 2.0 * x <= upper else 0.0
    t_hi = math.sqrt(2.0 * x)
    t_lo = math.sqrt(max(2.0 * x - upper, 0.0))
    if t_hi <= t_lo:
        return direct
    t, wt = _t_rule(t_lo, t_hi)
    y = 2.0 * x - t * t
    ry = np.sqrt(np.maximum(y, 0.0))
    values = func(y)
    j0_part = np.dot(wt, 2.0 * t * special.j0(ry * t) * values)
    j1_part = np.dot(wt, 2.0 * ry * special.j1(ry * t) * values)
    return direct + 0.5 * sign * j0_part - 0.5 * j1_part


def inverse_values(pair: ExpansionPair, x) -> np.ndarray:
    """
    k(x) = f(2x) + 1/2 int_0^{2x} (J_0 - sqrt(y/(2x-y)) J_1) f dy
         + g(2x) - 1/2 int_0^{2x} (J_0 + sqrt(y/(2x-y)) J_1) g dy
    """
    f_eval, g_eval = _interpolant(pair.f), _interpolant(pair.g)
    upper = pair.f.grid.hi
    x = np.atleast_1d(np.asarray(x, dtype=float))
    return np.array([_half_inverse(f_eval, xi, 1.0, upper) + _half_inverse(g_eval, xi, -1.0, upper)
                     for xi in x])


def inverse(pair: ExpansionPair, n: Optional[int] = None) -> GridFn:
    """k on (0, B) from a pair supported in (0, 2B)"""
    support = 0.5 * pair.f.grid.hi
    grid = make_grid(support, n or max(DEFAULT_N, pair.f.grid.n // 2))
    return GridFn(grid, inverse_values(pair, grid.nodes), extend=lambda x: inverse_values(pair, x))


def negate_g(pair: ExpansionPair) -> ExpansionPair:
    """(f, g) -> (f, -g), the image of H"""
    g = pair.g
    extend = None if g.extend is None else (lambda y: -g.extend(y))
    return ExpansionPair(f=pair.f, g=GridFn(g.grid, -g.values, extend=extend))


def psi_map(f: GridFn, support: Optional[float] = None, n: Optional[int] = None) -> GridFn:
    """
    psi(f)(x) = (1 + d/dx) 1/2 int_0^{2x} J_0(sqrt(y(2x-y))) f(y) dy, expanded as

        f(2x) + 1/2 int_0^{2x} J_0(w) f(y) dy - 1/2 int_0^{2x} sqrt(y/(2x-y)) J_1(w) f(y) dy

    Args:
        f: Input supported in its grid interval
        support: Output interval (0, support); defaults to the input's upper end
        n: Output node count

    Returns:
        GridFn carrying the formula as its extension
    """
    f_eval = _evaluator(f)
    upper = f.grid.hi
    support = validate_positive('support', support or upper)

    def evaluate(x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        return np.array([_half_inverse(f_eval, xi, 1.0, upper) for xi in x])

    grid = make_grid(support, n or f.grid.n)
    return GridFn(grid, evaluate(grid.nodes), extend=evaluate)


def half_sum_transform(f1: GridFn, g1: GridFn, n: Optional[int] = None) -> ExpansionPair:
    """(f(x), g(x)) = 1/2 (g1(x/2) + f1(x/2), g1(x/2) - f1(x/2)) on twice the interval"""
    f1_eval, g1_eval = _evaluator(f1), _evaluator(g1)
    grid = make_grid(2.0 * f1.grid.hi, n or f1.grid.n)

    def f(x):
        x = np.asarray(x, dtype=float)
        return 0.5 * (g1_eval(0.5 * x) + f1_eval(0.5 * x))

    def g(x):
        x = np.asarray(x, dtype=float)
        return 0.5 * (g1_eval(0.5 * x) - f1_eval(0.5 * x))

    return ExpansionPair(f=GridFn(grid, f(grid.nodes), extend=f), g=GridFn(grid, g(grid.nodes), extend=g))


# ---------------------------------------------------------------------------
# Laguerre route
# ---------------------------------------------------------------------------

def laguerre_functions(n_max: int, x) -> np.ndarray:
    """Rows phi_n(x) = L_n(2x) e^{-x}, n = 0..n_max"""
    x = np.asarray(x, dtype=float)
    return laguerre_table(n_max, 2.0 * x) * np.exp(-x)


def laguerre_coefficients(k: GridFn, N: int) -> Tuple[np.ndarray, float]:
    """
    c_n = 2 int k(x) L_n(2x) e^{-x} dx for n <= N, and the truncation loss
    2 ||k||^2 - sum c_n^2
    """
    k_eval = _evaluator(k)
    lo, hi = k.grid.lo, k.grid.hi
    panels = max(1, int(math.ceil((hi - lo) / MOMENT_PANEL)))
    x, wx = panel_nodes(lo, hi, panels, SUBST_ORDER)
    kx = k_eval(x)
    coef = 2.0 * laguerre_functions(N, x) @ (wx * kx)
    loss = 2.0 * float(np.dot(wx, kx * kx)) - float(np.sum(coef * coef))
    return coef, loss


def laguerre_oracle(k: GridFn, N: int = LAGUERRE_MAX, n_out: Optional[int] = None) -> ExpansionPair:
    """
    Expansion pair from the Laguerre coefficients of k

    Args:
        k: Input on (lo, B)
        N: Truncation degree, N <= 200
        n_out: Output node count on (0, 2B)

    Returns:
        ExpansionPair with f = sum c_{2m} phi_m, g = sum c_{2m+1} phi_m
    """
    if not 1 <= N <= LAGUERRE_MAX:
        raise DomainError(f"N must lie in [1, {LAGUERRE_MAX}], got {N}")
    coef, loss = laguerre_coefficients(k, N)
    if loss > LAGUERRE_LOSS:
        raise AccuracyLossError(f"Laguerre truncation at N={N} loses {loss:.2e} of 2||k||^2")
    even, odd = coef[0::2], coef[1::2]

    def f(y):
        return even @ laguerre_functions(len(even) - 1, y)

    def g(y):
        return odd @ laguerre_functions(len(odd) - 1, y)

    grid = make_grid(2.0 * k.grid.hi, n_out or max(128, 2 * k.grid.n))
    return ExpansionPair(f=GridFn(grid, f(grid.nodes), extend=f), g=GridFn(grid, g(grid.nodes), extend=g))


# ---------------------------------------------------------------------------
# Members of K_a
# ---------------------------------------------------------------------------

def ka_element_values(a: float, t: float, x) -> np.ndarray:
    """
    f_t^a = tau_a tau_a^#(g_t^a) with g_t^a = e^{-a(t+1/t)} e^{-tx} 1_{x>0}:

        f_t^a(a + u) = e^{-a(t+1/t)} (e^{-tu} - int_0^u f_a(s') e^{-t(u-s')} ds'),  u > 0

    and zero for x < a. The convolution is taken over its last CONV_DECAY / t units.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    u = x - a
    out = np.zeros_like(x)
    inside = u > 0
    if not np.any(inside):
        return out
    ui = u[inside]
    span = np.minimum(ui, CONV_DECAY / t)
    xi, wi = panel_nodes(0.0, 1.0, 8, SUBST_ORDER)
    s = span[:, None] * xi[None, :]
    conv = (bessel_f(a, ui[:, None] - s) * np.exp(-t * s)) @ wi * span
    out[inside] = math.exp(-a * (t + 1.0 / t)) * (np.exp(-t * ui) - conv)
    return out


def make_Ka_element(a: float, t: float, upper: Optional[float] = None, n: int = DEFAULT_N) -> GridFn:
    """
    f_t^a sampled on (a, upper), with the exact formula as extension

    Args:
        a: a > 0
        t: t > 0
        upper: Right end of the sampling grid; default a + 40/t
        n: Node count
    """
    a = validate_positive('a', a)
    t = validate_positive('t', t)
    upper = upper or a + CONV_DECAY / t
    grid = make_grid(upper - a, n, lo=a)
    return GridFn(grid, ka_element_values(a, t, grid.nodes), extend=lambda x: ka_element_values(a, t, x))


def ka_laplace(a: float, t: float, tau: float) -> float:
    """int f_t^a(x) e^{-tau x} dx by quadrature over (a, a + 45/tau)"""
    tau = validate_positive('tau', tau)
    tail = panel_integrate(lambda u: ka_element_values(a, t, a + u) * np.exp(-tau * u),
                           0.0, 45.0 / tau, width=TAIL_PANEL)
    return math.exp(-tau * a) * tail


def ka_laplace_closed(a: float, t: float, tau: float) -> float:
    """e^{-a(t + 1/t + tau + 1/tau)} / (t + tau)"""
    return math.exp(-a * (t + 1.0 / t + tau + 1.0 / tau)) / (t + tau)


def _ka_tail_rule(a: float, t: float, beat: float):
    """
    Nodes x = a + w^2 and weights carrying 2w f_t^a(x) times a cutoff
    erfc((w - w0)/sigma)/2 with sigma = CUT_SCALE / beat

    Integrals of f_t^a against kernels whose frequency in sqrt(x) differs from
    2 sqrt(a) by at least `beat` are then accurate far below 1e-8.
    """
    sigma = CUT_SCALE / beat
    w0 = 6.0 * sigma
    w_end = w0 + 6.0 * sigma
    panels = max(1, int(math.ceil(w_end / TAIL_PANEL)))
    w, ww = panel_nodes(0.0, w_end, panels, SUBST_ORDER)
    x = a + w * w
    cut = 0.5 * special.erfc((w - w0) / sigma)
    logger.debug(f"K_a tail rule: beat={beat:.3f}, w_end={w_end:.1f}, {len(w)} nodes")
    return x, ww * 2.0 * w * cut * ka_element_values(a, t, x)


def ka_transform(a: float, t: float, x_points) -> np.ndarray:
    """H(f_t^a) at points x whose sqrt differs from sqrt(a)"""
    x_points = np.atleast_1d(np.asarray(x_points, dtype=float))
    beat = 2.0 * float(np.min(np.abs(np.sqrt(x_points) - math.sqrt(a))))
    if beat < 1e-2:
        raise DomainError("Points too close to x = a for the tail cutoff")
    x, weights = _ka_tail_rule(a, t, beat)
    return special.j0(2.0 * np.sqrt(np.outer(x_points, x))) @ weights


def ka_forward(a: float, t: float, y_points) -> Tuple[np.ndarray, np.ndarray]:
    """Expansion pair of f_t^a at points y < 2a"""
    y_points = np.atleast_1d(np.asarray(y_points, dtype=float))
    if np.any(y_points >= 2.0 * a):
        raise DomainError("ka_forward evaluates on (0, 2a) only")
    beat = 2.0 * math.sqrt(a) - math.sqrt(2.0 * float(y_points.max()))
    x, weights = _ka_tail_rule(a, t, beat)
    f = np.empty_like(y_points)
    g = np.empty_like(y_points)
    for i, y in enumerate(y_points):
        w = np.sqrt(y * (2.0 * x - y))
        j0 = special.j0(w)
        j1 = np.sqrt(y / (2.0 * x - y)) * special.j1(w)
        f[i] = 0.5 * np.dot(j0 - j1, weights)
        g[i] = -0.5 * np.dot(j0 + j1, weights)
    return f, g


# ---------------------------------------------------------------------------
# Checks
# ---------------------------------------------------------------------------

def parseval_check(k: GridFn, tol: float = 1e-6, n_out: Optional[int] = None) -> CheckReport:
    """||f||^2 + ||g||^2 = ||k||^2"""
    pair = forward(k, n_out)
    return CheckReport.build('parseval', {'support': k.grid.hi}, pair.norm2(), k.norm2(), tol)


def round_trip_check(k: GridFn, tol: float = 1e-6) -> CheckReport:
    """sup |inverse(forward(k)) - k| over the grid nodes of k"""
    pair = forward(k)
    back = inverse_values(pair, k.grid.nodes)
    err = float(np.max(np.abs(back - k.values)))
    return CheckReport.build('round_trip', {'support': k.grid.hi}, err, 0.0, tol)


def involution_check(k: GridFn, x_points, tol: float = 1e-5) -> List[CheckReport]:
    """inverse(f, -g) = H(k) at sample points"""
    pair = forward(k)
    image = inverse_values(negate_g(pair), x_points)
    transformed = apply_H(k, x_points)
    return [CheckReport.build('h_involution', {'x': float(x)}, lhs, rhs, tol)
            for x, lhs, rhs in zip(np.atleast_1d(x_points), image, transformed)]


def psi_closed_exponential(lam: float, x) -> np.ndarray:
    """
    psi(e^{-lam y}) in closed form: Laplace transform (1 + p) / (p^2 + 2 lam p + 1)

    lam = 1 gives e^{-x}; lam > 1 gives two exponentials with rates lam -+ sqrt(lam^2 - 1).
    """
    x = np.asarray(x, dtype=float)
    if abs(lam - 1.0) < 1e-12:
        return np.exp(-x)
    if lam < 1.0:
        raise DomainError("closed form implemented for lam >= 1")
    root = math.sqrt(lam * lam - 1.0)
    r1, r2 = lam - root, lam + root
    return ((1.0 - r1) * np.exp(-r1 * x) - (1.0 - r2) * np.exp(-r2 * x)) / (r2 - r1)


def psi_isometry_check(lam: float = 2.0, tol: float = 1e-6, n: int = 256) -> List[CheckReport]:
    """
    psi(e^{-lam y}) against its closed form, and ||psi(f)|| = ||f||
    """
    lam = validate_positive('lam', lam)
    support = 40.0 / lam
    f = sample(lambda y: np.exp(-lam * y) * smooth_cutoff(y, 0.75 * support, support), support, n)
    slow = lam - math.sqrt(max(lam * lam - 1.0, 0.0))
    image = psi_map(f, support=40.0 / slow, n=n)
    closed = psi_closed_exponential(lam, image.grid.nodes)
    params = {'lam': lam}
    return [
        CheckReport.build('psi_closed_form', params, float(np.max(np.abs(image.values - closed))), 0.0, tol),
        CheckReport.build('psi_isometry', params, image.norm2(), f.norm2(), tol),
    ]


def laguerre_agreement_check(k: GridFn, N: int = LAGUERRE_MAX, tol: float = 1e-4) -> List[CheckReport]:
    """Laguerre-route pair against the forward map, sup over the output nodes"""
    route = laguerre_oracle(k, N)
    direct = forward(k)
    params = {'N': N, 'support': k.grid.hi}
    return [
        CheckReport.build('laguerre_f', params, float(np.max(np.abs(route.f.values - direct.f.values))), 0.0, tol),
        CheckReport.build('laguerre_g', params, float(np.max(np.abs(route.g.values - direct.g.values))), 0.0, tol),
    ]


def ka_checks(a: float = 1.0, t: float = 1.0, tau: float = 1.0, tol_laplace: float = 1e-5,
              tol_support: float = 1e-5) -> List[CheckReport]:
    """
    Laplace transform of f_t^a, H(f_t^a) = 0 on (0, a), H(f_t^a) = f_{1/t}^a / t beyond a,
    and vanishing of its expansion pair on (0, 2a)
    """
    params = {'a': a, 't': t}
    reports = [CheckReport.build('ka_laplace', {**params, 'tau': tau}, ka_laplace(a, t, tau),
                                 ka_laplace_closed(a, t, tau), tol_laplace)]
    inner = np.linspace(0.1, 0.8, 8) * a
    outer = np.linspace(1.5, 3.0, 4) * a
    h_inner = ka_transform(a, t, inner)
    reports.append(CheckReport.build('ka_membership', params, float(np.max(np.abs(h_inner))), 0.0, tol_support))
    h_outer = ka_transform(a, t, outer)
    partner = ka_element_values(a, 1.0 / t, outer) / t
    reports.append(CheckReport.build('ka_reciprocal', params, float(np.max(np.abs(h_outer - partner))),
                                     0.0, tol_support))
    f, g = ka_forward(a, t, np.linspace(0.1, 1.6, 8) * a)
    reports.append(CheckReport.build('ka_pair_support', params,
                                     float(max(np.max(np.abs(f)), np.max(np.abs(g)))), 0.0, 1e-4))
    return reports


def gaussian_bump(center: float = 3.0, width: float = 0.5, support: float = 8.0,
                  n: int = 128) -> GridFn:
    """exp(-((x - center)/width)^2) on (0, support)"""
    return sample(lambda x: np.exp(-((x - center) / width) ** 2), support, n)


def exponential_invariance_check(support: float = 40.0, tol: float = 1e-6) -> List[CheckReport]:
    """e^{-x}, smoothly cut at `support`, is H-invariant: g = 0 and ||f||^2 = 1/2"""
    k = sample(lambda x: np.exp(-x) * smooth_cutoff(x, 0.75 * support, support), support, 256)
    pair = forward(k, n_out=256)
    params = {'support': support}
    return [
        CheckReport.build('exp_g_vanishes', params, float(np.max(np.abs(pair.g.values))), 0.0, tol),
        CheckReport.build('exp_norm', params, pair.f.norm2(), 0.5, tol),
    ]
