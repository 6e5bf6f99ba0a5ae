"""
Extended Space Service - the scalars r, s, p, q, alpha, beta of the spaces L_a,
the extended operator H^ext = L H L^{-1}, mu^ext, extended determinants,
extended Mellin data and the Y-kernel
"""
import logging
import math
from typing import List, Tuple

import numpy as np
from scipy import integrate, special

from models import CheckReport, ComplexValue, ExtendedState, OdeResidual
from utils.errors import DomainError
from utils.validators import validate_finite, validate_positive, validate_sign
from .discretize import DEFAULT_N, apply_H_to, make_grid, nystrom, rs_means, solve_psi
from .spectral import rep_kernel, spectral_point
from .specfun import bessel_k_complex, exp_integral_e1, jinc

logger = logging.getLogger(__name__)

# I-Bessel squares overflow beyond this endpoint
MAX_ENDPOINT = 150.0
SERIES_CUTOFF = 1.0
SERIES_TERMS = 24


def _scaled_rs(a: float) -> Tuple[float, float]:
    """(I_0(2a), I_1(2a)) times e^{-2a}"""
    return float(special.i0e(2.0 * a)), float(special.i1e(2.0 * a))


def _i0_minus_one(a: float) -> float:
    """I_0(2a) - 1 = sum_{k>=1} a^{2k} / (k!)^2"""
    total, term, k = 0.0, 1.0, 0
    while True:
        k += 1
        term *= a * a / (k * k)
        total += term
        if term < 1e-17 * total:
            return total


def _scaled_pq(a: float) -> Tuple[float, float]:
    """(p, q) times e^{-4a}"""
    re, se = _scaled_rs(a)
    p_scaled = a * (re * re - se * se)
    if a < 1.0:
        # q = (r - 1)(r + 1) / 2 without cancellation
        r = float(special.i0(2.0 * a))
        return p_scaled, 0.5 * _i0_minus_one(a) * (r + 1.0) * math.exp(-4.0 * a)
    return p_scaled, 0.5 * (re * re - math.exp(-4.0 * a))


def _check_endpoint(a: float) -> float:
    a = validate_positive('a', a)
    if a > MAX_ENDPOINT:
        raise DomainError(f"Extended quantities overflow for a > {MAX_ENDPOINT}, got {a}")
    return a


def ext_state(a: float) -> ExtendedState:
    """
    Closed forms r = I_0(2a), s = I_1(2a), p = a(r^2 - s^2), q = (r^2 - 1)/2,
    alpha = p/(p^2 - q^2), beta = q/(p^2 - q^2) and

        mu_ext = 2a + a d/da log((p-q)/(p+q)) = 2a + a ((r-s)^2/(p-q) - (r+s)^2/(p+q))

    using (p -+ q)' = (r -+ s)^2.
    """
    a = _check_endpoint(a)
    re, se = _scaled_rs(a)
    pe, qe = _scaled_pq(a)
    mu_ext = 2.0 * a + a * ((re - se) ** 2 / (pe - qe) - (re + se) ** 2 / (pe + qe))

    grow2, grow4 = math.exp(2.0 * a), math.exp(4.0 * a)
    r, s = re * grow2, se * grow2
    p, q = pe * grow4, qe * grow4
    gram = p * p - q * q
    return ExtendedState(a=a, r=r, s=s, p=p, q=q, alpha=p / gram, beta=q / gram, mu_ext=mu_ext)


def ext_kernel(u):
    """
    Kernel of H^ext as a function of u = xy:

        J_0(2 sqrt(u)) - 2 J_1(2 sqrt(u))/sqrt(u) + (1 - J_0(2 sqrt(u)))/u

    Below u = 1 the series sum_n (-1)^n n^2 u^n / ((n+1)!)^2 is used.
    """
    u = np.asarray(u, dtype=float)
    if np.any(u < 0):
        raise DomainError("ext_kernel needs u >= 0")
    out = np.empty_like(u)
    small = u < SERIES_CUTOFF
    us = u[small]
    total = np.zeros_like(us)
    power = np.ones_like(us)
    for n in range(1, SERIES_TERMS):
        power = power * -us
        total += n * n * power / math.factorial(n + 1) ** 2
    out[small] = total
    ul = u[~small]
    j0 = special.j0(2.0 * np.sqrt(ul))
    out[~small] = j0 - 2.0 * jinc(ul) + (1.0 - j0) / ul
    return out.item() if out.ndim == 0 else out


def ext_det(a: float, sign: str) -> float:
    """det(1 +- H_a^ext) = e^{+-a - a^2/2} (p -+ q) / a"""
    sgn = validate_sign(sign)
    a = validate_positive('a', a)
    pe, qe = _scaled_pq(a)
    # e^{4a} from the scaling folds into the exponent
    return math.exp(sgn * a - 0.5 * a * a + 4.0 * a) * (pe - sgn * qe) / a


def ext_det_nystrom(a: float, sign: str, n: int = DEFAULT_N) -> float:
    """Nystrom determinant of the extended kernel on (0, a)"""
    sgn = validate_sign(sign)
    return nystrom(validate_positive('a', a), n, 'extended').det(sgn)


def ext_state_nystrom(a: float, n: int = DEFAULT_N) -> ExtendedState:
    """
    The same scalars from Nystrom solves:
    r = 1 + 1/2 int (phi^- - phi^+), s = 1/2 int (phi^+ + phi^-),
    p = 1/2 int (psi^+ + psi^-), q = 1/2 int (psi^- - psi^+)
    """
    a = validate_positive('a', a)
    r, s = rs_means(a, n)
    grid = make_grid(a, n)
    plus = solve_psi(a, '+', grid)
    minus = solve_psi(a, '-', grid)
    p = 0.5 * float(grid.integrate(plus.values + minus.values))
    q = 0.5 * float(grid.integrate(minus.values - plus.values))
    gram = p * p - q * q
    mu_ext = 2.0 * a + a * ((r - s) ** 2 / (p - q) - (r + s) ** 2 / (p + q))
    return ExtendedState(a=a, r=r, s=s, p=p, q=q, alpha=p / gram, beta=q / gram, mu_ext=mu_ext)


def psi_endpoint_values(a: float, n: int = DEFAULT_N) -> Tuple[float, float]:
    """(psi_a^+(a), psi_a^-(a)) from the Nystrom interpolant; closed values r -+ s"""
    grid = make_grid(validate_positive('a', a), n)
    return (float(solve_psi(a, '+', grid).evaluate(a)),
            float(solve_psi(a, '-', grid).evaluate(a)))


def ext_spectral(a: float, z: complex) -> Tuple[complex, complex, complex]:
    """
    Extended Mellin data, with B~ = -iB:

        A_ext  = ((z-1/2)^2 + (p+q)/(4(p-q))) A + a(r-s)^2/(p-q) (z-1/2) B~
        B~_ext = ((z-1/2)^2 + (p-q)/(4(p+q))) B~ + a(r+s)^2/(p+q) (z-1/2) A

    Returns:
        (A_ext, B_ext, E_ext) with E_ext = A_ext - i B_ext
    """
    a = _check_endpoint(a)
    validate_finite('z', z)
    z = complex(z)
    re, se = _scaled_rs(a)
    pe, qe = _scaled_pq(a)
    point = spectral_point(a, z)
    b_tilde = -1j * point.B
    shift = z - 0.5
    a_ext = (shift ** 2 + 0.25 * (pe + qe) / (pe - qe)) * point.A \
        + a * (re - se) ** 2 / (pe - qe) * shift * b_tilde
    b_tilde_ext = (shift ** 2 + 0.25 * (pe - qe) / (pe + qe)) * b_tilde \
        + a * (re + se) ** 2 / (pe + qe) * shift * point.A
    return a_ext, 1j * b_tilde_ext, a_ext + b_tilde_ext


def t_function(a: float, s: complex, state: ExtendedState = None) -> complex:
    """T_a(s) = sqrt(a) s (E_a(s) r + E_a(1-s) s_I); T_a(1) = 1"""
    state = state or ext_state(a)
    s = complex(s)
    root = math.sqrt(a)
    e_s = 2.0 * root * bessel_k_complex(s, 2.0 * a)
    e_r = 2.0 * root * bessel_k_complex(1.0 - s, 2.0 * a)
    return root * s * (e_s * state.r + e_r * state.s)


def y_kernel(a: float, s: complex, z: complex) -> complex:
    """
    Y_a(s, z) = s(s-1) z(z-1) X_a(s, z) + [T(s), T(1-s)] [[alpha, beta], [beta, alpha]] [T(z), T(1-z)]^T
    """
    a = _check_endpoint(a)
    s, z = complex(s), complex(z)
    state = ext_state(a)
    left = np.array([t_function(a, s, state), t_function(a, 1.0 - s, state)])
    right = np.array([t_function(a, z, state), t_function(a, 1.0 - z, state)])
    gram_inv = np.array([[state.alpha, state.beta], [state.beta, state.alpha]])
    return s * (s - 1.0) * z * (z - 1.0) * rep_kernel(a, s, z) + left @ gram_inv @ right


def y_kernel_ratio(a: float, s: complex, z: complex) -> complex:
    """(E_ext(s) E_ext(z) - E_ext(1-s) E_ext(1-z)) / (s + z - 1), off the diagonal"""
    s, z = complex(s), complex(z)
    if abs(s + z - 1.0) < 1e-6:
        raise DomainError("y_kernel_ratio is singular on s + z = 1")
    e = {w: ext_spectral(a, w)[2] for w in (s, z, 1.0 - s, 1.0 - z)}
    return (e[s] * e[z] - e[1.0 - s] * e[1.0 - z]) / (s + z - 1.0)


def _norm_ratio_squared(b: float) -> float:
    pe, qe = _scaled_pq(b)
    return ((pe + qe) / (pe - qe)) ** 2


def ext_norm_half(a: float) -> Tuple[float, float]:
    """
    Squared norm of f -> int f(x) x^{-1/2} dx on L_a, two ways:

        2 int_a^inf ((p+q)/(p-q))^2 e^{-4b} db / b
        2 E_1(4a) + 8a (r+s)^2 e^{-4a} / (p-q)

    Returns:
        Tuple (quadrature value, closed value)
    """
    a = _check_endpoint(a)
    value, _ = integrate.quad(lambda b: _norm_ratio_squared(b) * math.exp(-4.0 * b) / b,
                              a, np.inf, epsabs=0.0, epsrel=1e-12, limit=200)
    re, se = _scaled_rs(a)
    pe, qe = _scaled_pq(a)
    # (r+s)^2 e^{-4a} / (p-q) is scale free
    closed = 2.0 * exp_integral_e1(4.0 * a) + 8.0 * a * (re + se) ** 2 * math.exp(-4.0 * a) / (pe - qe)
    return 2.0 * value, closed


def _log_stencil(func, a: float, h: float):
    """First derivative in u = log a by the 5-point stencil"""
    u = math.log(a)
    f = [func(math.exp(u + k * h)) for k in (-2, -1, 1, 2)]
    return (f[0] - 8.0 * f[1] + 8.0 * f[2] - f[3]) / (12.0 * h)


def ext_dirac_residual(a: float, z: complex, h: float = 1e-3) -> OdeResidual:
    """
    Residuals of the extended canonical system in u = log a:

        dA_ext/du  = -mu_ext A_ext  - (z - 1/2) B~_ext
        dB~_ext/du = +mu_ext B~_ext - (z - 1/2) A_ext

    Each residual is relative to the sum of its term magnitudes.
    """
    a = _check_endpoint(a)
    z = complex(z)
    shift = z - 0.5
    mu = ext_state(a).mu_ext
    a_ext, b_ext, _ = ext_spectral(a, z)
    b_tilde = -1j * b_ext
    d_a = _log_stencil(lambda b: ext_spectral(b, z)[0], a, h)
    d_b = _log_stencil(lambda b: -1j * ext_spectral(b, z)[1], a, h)

    def relative(*terms):
        return abs(sum(terms)) / max(sum(abs(t) for t in terms), 1e-300)

    return OdeResidual(u=math.log(a), gamma=ComplexValue.of(-1j * shift),
                       residual_A=relative(d_a, mu * a_ext, shift * b_tilde),
                       residual_B=relative(d_b, -mu * b_tilde, shift * a_ext), step=h)


def ext_relations_check(a: float, tol: float = 1e-6) -> List[CheckReport]:
    """
    Differential relations a r' = mu s, (a s)' = mu r, p' = r^2 + s^2, q' = 2rs
    (central differences), the Gram inverse and
    a(p'+q')/(p+q) * a(p'-q')/(p-q) = p alpha
    """
    a = _check_endpoint(a)
    st = ext_state(a)
    h = 1e-4 * max(1.0, a)
    lo, hi = ext_state(a - h), ext_state(a + h)

    def d(field):
        return (getattr(hi, field) - getattr(lo, field)) / (2.0 * h)

    mu = 2.0 * a
    as_prime = ((a + h) * hi.s - (a - h) * lo.s) / (2.0 * h)
    params = {'a': a}
    scale = math.exp(-4.0 * a)
    gram = np.array([[st.p, -st.q], [-st.q, st.p]]) @ np.array([[st.alpha, st.beta], [st.beta, st.alpha]])
    product = a * (st.r + st.s) ** 2 / (st.p + st.q) * a * (st.r - st.s) ** 2 / (st.p - st.q)
    return [
        CheckReport.build('ext_r_flow', params, a * d('r') * math.exp(-2 * a),
                          mu * st.s * math.exp(-2 * a), tol),
        CheckReport.build('ext_s_flow', params, as_prime * math.exp(-2 * a),
                          mu * st.r * math.exp(-2 * a), tol),
        CheckReport.build('ext_p_flow', params, d('p') * scale, (st.r ** 2 + st.s ** 2) * scale, tol),
        CheckReport.build('ext_q_flow', params, d('q') * scale, 2.0 * st.r * st.s * scale, tol),
        CheckReport.build('ext_gram_inverse', params, float(np.abs(gram - np.eye(2)).max()), 0.0, 1e-12),
        CheckReport.build('ext_log_derivative_product', params, product, st.p * st.alpha, 1e-10),
    ]


def _exp_combination(t: float):
    """Coefficients c_k, rates k t of f = e^{-tx} - 4 e^{-2tx} + 3 e^{-3tx}: int f = f(0) = 0"""
    return (1.0, -4.0, 3.0), (t, 2.0 * t, 3.0 * t)


def _apply_L_exponentials(coefs, rates, x):
    """L(sum c e^{-lambda x}) with L f(x) = f(x) - (1/x) int_0^x f"""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    for c, lam in zip(coefs, rates):
        lx = lam * x
        out += c * (np.exp(-lx) + np.expm1(-lx) / lx)
    return out


def ext_transform_check(t: float, x_points, tol: float = 1e-6) -> List[CheckReport]:
    """
    H^ext against its definition and its invariant function:

        H^ext(L f) = L(H f) for f = e^{-tx} - 4 e^{-2tx} + 3 e^{-3tx}
        H^ext(x(x-1)e^{-x}) = x(x-1)e^{-x}
    """
    t = validate_positive('t', t)
    x = np.asarray(x_points, dtype=float)
    coefs, rates = _exp_combination(t)
    # H e^{-lambda x} = e^{-x/lambda}/lambda
    h_coefs = [c / lam for c, lam in zip(coefs, rates)]
    h_rates = [1.0 / lam for lam in rates]

    lhs = apply_H_to(lambda y: _apply_L_exponentials(coefs, rates, y), x, decay=t,
                     scale=10.0, kernel=ext_kernel)
    rhs = _apply_L_exponentials(h_coefs, h_rates, x)
    invariant = apply_H_to(lambda y: y * (y - 1.0) * np.exp(-y), x, decay=0.5,
                           scale=4.0, kernel=ext_kernel)
    reports = []
    for xi, l_val, r_val, inv in zip(x, lhs, rhs, invariant):
        reports.append(CheckReport.build('ext_conjugation', {'t': t, 'x': xi}, l_val, r_val, tol))
        reports.append(CheckReport.build('ext_invariant', {'x': xi}, inv,
                                         xi * (xi - 1.0) * math.exp(-xi), tol))
    return reports


def ext_state_check(a: float, n: int = DEFAULT_N, tol: float = 1e-8) -> List[CheckReport]:
    """Closed-form r, s, p, q and psi_a^{+-}(a) = r -+ s against Nystrom solves"""
    closed = ext_state(a)
    numeric = ext_state_nystrom(a, n)
    psi_plus, psi_minus = psi_endpoint_values(a, n)
    params = {'a': closed.a}
    reports = [CheckReport.build(f"ext_state_{name}", params, getattr(numeric, name),
                                 getattr(closed, name), tol)
               for name in ('r', 's', 'p', 'q')]
    reports.append(CheckReport.build('psi_plus_endpoint', params, psi_plus, closed.r - closed.s, tol))
    reports.append(CheckReport.build('psi_minus_endpoint', params, psi_minus, closed.r + closed.s, tol))
    return reports
