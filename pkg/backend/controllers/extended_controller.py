"""
Extended Controller - closed-form scalars of the extended spaces (extended)
"""
from services import extended

from .common import emit

EXTENDED_CSV_HEADER = ['a', 'r', 's', 'p', 'q', 'alpha', 'beta', 'mu_ext', 'det_plus_ext', 'det_minus_ext']


def extended_sweep(args) -> int:
    rows = []
    for a in args.a:
        state = extended.ext_state(a)
        rows.append([state.a, state.r, state.s, state.p, state.q, state.alpha, state.beta, state.mu_ext,
                     extended.ext_det(a, '+'), extended.ext_det(a, '-')])
    data = {'rows': [dict(zip(EXTENDED_CSV_HEADER, row)) for row in rows]}
    return emit(args, 'extended', data, EXTENDED_CSV_HEADER, rows)


def register(subparsers, parents):
    parser = subparsers.add_parser('extended', parents=parents, help='extended-space scalars over a sweep of a')
    parser.set_defaults(handler=extended_sweep)
