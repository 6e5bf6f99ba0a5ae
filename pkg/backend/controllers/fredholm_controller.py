"""
Fredholm Controller - determinants (det) and the mu function (mu)
"""
from models import CheckReport
from services import fredholm
from utils.validators import validate_grid_size, validate_nonnegative

from .common import emit, emit_checks, tolerance, usage_errors

DET_CSV_HEADER = ['a', 'kernel', 'det_plus', 'det_minus', 'closed_plus', 'closed_minus',
                  'abs_err_plus', 'abs_err_minus']


def det(args) -> int:
    """det(1 +- K) from Nystrom eigenvalues next to the closed forms"""
    with usage_errors():
        n = validate_grid_size(args.n)
        endpoints = [validate_nonnegative('a', a) for a in args.a]
    records = [fredholm.det_record(a, args.kernel, n).to_dict() for a in endpoints]
    rows = [[r[key] for key in DET_CSV_HEADER] for r in records]
    data = records[0] if len(records) == 1 else {'records': records}
    return emit(args, 'det', data, DET_CSV_HEADER, rows)


def mu(args) -> int:
    """
    mu(a) = 2a against the log-ratio derivative, with the second-order
    determinant identities and the endpoint flows
    """
    with usage_errors():
        n = validate_grid_size(args.n)
    tol = tolerance(args, 'mu_abs')
    cases = []
    for a in args.a:
        cases.append(CheckReport.build('mu_log_ratio', {'a': a}, fredholm.mu_numeric(a, n),
                                       fredholm.mu(a), tol))
        cases.extend(fredholm.gaudin_check(a, 'closed', tolerance(args, 'gaudin_abs'), n))
        cases.extend(fredholm.gaudin_check(a, 'nystrom', tolerance(args, 'gaudin_fd_abs'), n))
        cases.extend(fredholm.endpoint_flow_check(a))
        cases.extend(fredholm.phi_at_endpoint_check(a, n))
    return emit_checks(args, 'mu', cases)


def register(subparsers, parents):
    parser = subparsers.add_parser('det', parents=parents, help='Fredholm determinants')
    parser.add_argument('--kernel', choices=['standard', 'extended'], default='standard')
    parser.set_defaults(handler=det)

    parser = subparsers.add_parser('mu', parents=parents, help='mu(a) and determinant identities')
    parser.set_defaults(handler=mu)
