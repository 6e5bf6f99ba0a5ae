"""
Fredholm Service - determinants of the finite H-operators, mu(a) and the
log-derivative identities
"""
import logging
import math
from typing import List, Tuple

from models import CheckReport, DetRecord
from utils.errors import DomainError
from utils.validators import validate_nonnegative, validate_positive, validate_sign
from .discretize import DEFAULT_N, closed_phi, nystrom

logger = logging.getLogger(__name__)


def fd_step(a: float) -> float:
    """Central-difference step for d/da checks"""
    return 1e-3 * max(1.0, a)


def closed_det(a: float, sign: str, kernel_id: str = 'standard') -> float:
    """
    Closed-form det(1 +- H_a)

    standard: e^{+-a - a^2/2}; extended: e^{+-a - a^2/2} (p -+ q) / a
    """
    sgn = validate_sign(sign)
    a = validate_nonnegative('a', a)
    base = math.exp(sgn * a - 0.5 * a * a)
    if kernel_id == 'standard':
        return base
    if kernel_id == 'extended':
        from .extended import ext_det
        return ext_det(a, sign)
    raise DomainError(f"No closed form for kernel {kernel_id}")


def fredholm_det(a: float, sign: str, kernel_id: str = 'standard', n: int = DEFAULT_N) -> float:
    """
    det(1 +- K) over the Nystrom eigenvalues of the kernel on (0, a)

    Args:
        a: Right endpoint; a == 0 gives the empty-interval value 1
        sign: '+' or '-'
        kernel_id: standard | extended
        n: Node count

    Returns:
        The determinant
    """
    sgn = validate_sign(sign)
    a = validate_nonnegative('a', a)
    if a == 0.0:
        return 1.0
    return nystrom(a, n, kernel_id).det(sgn)


def log_det(a: float, sign: str, kernel_id: str = 'standard', n: int = DEFAULT_N) -> float:
    """log det(1 +- K) from Nystrom eigenvalues"""
    sgn = validate_sign(sign)
    return nystrom(validate_positive('a', a), n, kernel_id).log_det(sgn)


def det_record(a: float, kernel_id: str = 'standard', n: int = DEFAULT_N) -> DetRecord:
    """All three determinants from one eigen-decomposition, with closed forms"""
    op = nystrom(validate_positive('a', a), n, kernel_id)
    plus, minus = op.det(+1), op.det(-1)
    # D_a = H_a^2, so det(1 - D_a) = prod(1 - lambda^2)
    det_d = 1.0
    for lam in op.eigenvalues:
        det_d *= 1.0 - lam * lam
    return DetRecord(a=a, kernel_id=kernel_id, det_plus=plus, det_minus=minus, det_D=det_d,
                     closed_plus=closed_det(a, '+', kernel_id),
                     closed_minus=closed_det(a, '-', kernel_id))


def mu(a: float) -> float:
    """
    mu(a) = a phi_a^+(a) + a phi_a^-(a)

    Equals 2a for the H-transform.
    """
    a = validate_nonnegative('a', a)
    if a == 0.0:
        return 0.0
    return a * float(closed_phi(a, '+', a)) + a * float(closed_phi(a, '-', a))


def mu_numeric(a: float, n: int = DEFAULT_N, h: float = None) -> float:
    """a d/da log(det(1+H_a)/det(1-H_a)) by central differences of Nystrom determinants"""
    a = validate_positive('a', a)
    h = h or fd_step(a)

    def log_ratio(b):
        op = nystrom(b, n)
        return op.log_det(+1) - op.log_det(-1)

    return a * (log_ratio(a + h) - log_ratio(a - h)) / (2 * h)


def _closed_theta_jets(a: float):
    """
    theta = a d/da applied to L+ = a - a^2/2, L- = -a - a^2/2 and log R = L+ - L-

    Returns:
        Dict of (value, theta, theta^2) triples
    """
    return {
        'plus': (a - 0.5 * a * a, a - a * a, a - 2 * a * a),
        'minus': (-a - 0.5 * a * a, -a - a * a, -a - 2 * a * a),
        'ratio': (2 * a, 2 * a, 2 * a),
    }


def _numeric_theta_jets(a: float, n: int, h: float):
    """theta-jets of the Nystrom log-determinants by 5-point differences in log a"""
    u = math.log(a)
    samples = {'plus': [], 'minus': []}
    for k in (-2, -1, 0, 1, 2):
        op = nystrom(math.exp(u + k * h), n)
        samples['plus'].append(op.log_det(+1))
        samples['minus'].append(op.log_det(-1))
    samples['ratio'] = [p - m for p, m in zip(samples['plus'], samples['minus'])]

    jets = {}
    for key, f in samples.items():
        d1 = (f[0] - 8 * f[1] + 8 * f[3] - f[4]) / (12 * h)
        d2 = (-f[0] + 16 * f[1] - 30 * f[2] + 16 * f[3] - f[4]) / (12 * h * h)
        jets[key] = (f[2], d1, d2)
    return jets


def gaudin_check(a: float, route: str = 'closed', tol: float = 1e-10,
                 n: int = DEFAULT_N) -> Tuple[CheckReport, CheckReport]:
    """
    Second-order log-determinant identities, theta = a d/da and R = det(1+H_a)/det(1-H_a):

        -2 theta^2 log det(1+H_a) = (theta log R)^2 - theta^2 log R
        -2 theta^2 log det(1-H_a) = (theta log R)^2 + theta^2 log R

    Args:
        a: Endpoint
        route: 'closed' uses exact theta-jets, 'nystrom' finite differences of Nystrom determinants
        tol: Tolerance for both reports
        n: Node count for the Nystrom route

    Returns:
        Pair of CheckReport (plus identity, minus identity)
    """
    a = validate_nonnegative('a', a)
    if route == 'closed':
        jets = _closed_theta_jets(a)
    elif route == 'nystrom':
        jets = _numeric_theta_jets(validate_positive('a', a), n, 1e-3)
    else:
        raise DomainError(f"Unknown route: {route}")

    _, theta_r, theta2_r = jets['ratio']
    params = {'a': a}
    plus = CheckReport.build('gaudin_plus', params, -2 * jets['plus'][2],
                             theta_r ** 2 - theta2_r, tol, note=route)
    minus = CheckReport.build('gaudin_minus', params, -2 * jets['minus'][2],
                              theta_r ** 2 + theta2_r, tol, note=route)
    return plus, minus


def endpoint_flow_check(a: float, tol: float = 1e-6) -> List[CheckReport]:
    """
    Flow of the endpoint values phi_a^{+-}(a), by central differences of closed_phi:

        2 theta (a phi_a^+(a)) = -mu^2 + a mu'
        2 theta (a phi_a^-(a)) = +mu^2 + a mu'
        d/da a (phi_a^-(a) - phi_a^+(a)) = a (phi_a^+(a) + phi_a^-(a))^2
    """
    a = validate_positive('a', a)
    h = fd_step(a)

    def end(sign, b):
        return b * float(closed_phi(b, sign, b))

    def d_da(func):
        return (func(a + h) - func(a - h)) / (2 * h)

    m = mu(a)
    mu_prime = d_da(mu)
    params = {'a': a}
    phi_p = float(closed_phi(a, '+', a))
    phi_m = float(closed_phi(a, '-', a))
    return [
        CheckReport.build('endpoint_flow_plus', params,
                          2 * a * d_da(lambda b: end('+', b)), -m * m + a * mu_prime, tol),
        CheckReport.build('endpoint_flow_minus', params,
                          2 * a * d_da(lambda b: end('-', b)), m * m + a * mu_prime, tol),
        CheckReport.build('endpoint_flow_difference', params,
                          d_da(lambda b: end('-', b) - end('+', b)), a * (phi_p + phi_m) ** 2, tol),
    ]


def phi_at_endpoint_check(a: float, n: int = DEFAULT_N, tol: float = 1e-5) -> List[CheckReport]:
    """
    phi_a^+(a) = d/da log det(1+H_a), phi_a^-(a) = -d/da log det(1-H_a) and
    mu^2 = -theta^2 log det(1-D_a), all from Nystrom determinants
    """
    a = validate_positive('a', a)
    h = fd_step(a)
    ops = [nystrom(a + k * h, n) for k in (-1, 1)]
    d_plus = (ops[1].log_det(+1) - ops[0].log_det(+1)) / (2 * h)
    d_minus = (ops[1].log_det(-1) - ops[0].log_det(-1)) / (2 * h)

    jets = _numeric_theta_jets(a, n, 1e-3)
    theta2_log_det_d = jets['plus'][2] + jets['minus'][2]
    params = {'a': a}
    return [
        CheckReport.build('phi_plus_endpoint', params, float(closed_phi(a, '+', a)), d_plus, tol),
        CheckReport.build('phi_minus_endpoint', params, float(closed_phi(a, '-', a)), -d_minus, tol),
        CheckReport.build('mu_squared', params, mu(a) ** 2, -theta2_log_det_d, 1e-3),
    ]
