"""
Scattering Controller - real zeros of B_a on the critical line and the scattering phase (scatter)
"""
from services import scattering

from .common import emit, parse_range

ZERO_CSV_HEADER = ['a', 'gamma_root', 'derivative_at_root']


def scatter(args) -> int:
    rows = []
    for a in args.a:
        rows.extend(scattering.zero_rows(a, scattering.find_B_zeros(a, args.gamma_range)))
    data = {
        'gamma_range': list(args.gamma_range),
        'zeros': [dict(zip(ZERO_CSV_HEADER, row)) for row in rows],
        'phase': [{'gamma_root': row[1], 'phase': float(scattering.phase(row[1]))} for row in rows],
    }
    return emit(args, 'scatter', data, ZERO_CSV_HEADER, rows)


def register(subparsers, parents):
    parser = subparsers.add_parser('scatter', parents=parents, help='zeros of B_a(1/2 + i gamma)')
    parser.add_argument('--gamma-range', dest='gamma_range', type=parse_range, default=(0.0, 10.0),
                        help='scan interval lo,hi within [-50, 50]')
    parser.set_defaults(handler=scatter)
