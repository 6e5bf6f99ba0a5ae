"""
Dirichlet Controller - sine-kernel resolvent against the sinc-basis reproducing kernel (dirichlet)
"""
from services import dirichlet
from utils.response import EXIT_FAILED_CHECKS, EXIT_OK
from utils.validators import validate_grid_size, validate_positive

from .common import emit, tolerance, usage_errors


def compare(args) -> int:
    """5x5 comparison grid; exit 1 when any relative error exceeds the tolerance"""
    with usage_errors():
        validate_grid_size(args.resolvent_n)
        validate_positive('m', args.m)
        s = dirichlet.check_bandwidth(args.s.real if args.s.imag == 0 else args.s, args.resolvent_n)
    tol = tolerance(args, 'dirichlet_rel')
    rows = dirichlet.comparison_rows(s, args.resolvent_n, args.m)
    data = {
        's': s,
        'tol': tol,
        'rows': [dict(zip(dirichlet.COMPARISON_CSV_HEADER, row)) for row in rows],
        'max_rel_err': max(row[-1] for row in rows),
    }
    emit(args, 'dirichlet', data, dirichlet.COMPARISON_CSV_HEADER, rows)
    return EXIT_OK if data['max_rel_err'] <= tol else EXIT_FAILED_CHECKS


def register(subparsers, parents):
    parser = subparsers.add_parser('dirichlet', parents=parents,
                                   help='resolvent of the sine kernel vs the reproducing kernel')
    parser.add_argument('--resolvent-n', dest='resolvent_n', type=int, default=dirichlet.DEFAULT_RESOLVENT_N,
                        help='Nystrom nodes on (-1, 1)')
    parser.add_argument('--m', type=int, default=dirichlet.DEFAULT_M, help='sinc basis half-size')
    parser.set_defaults(handler=compare)
