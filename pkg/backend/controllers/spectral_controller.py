"""
Spectral Controller - Mellin data A, B, E (spectral) and the reproducing kernel (kernel)
"""
from models import CheckReport, SPECTRAL_CSV_HEADER
from services import spectral

from .common import emit, emit_checks, parse_complex, tolerance


def spectral_points(args) -> int:
    points = [spectral.spectral_point(a, args.s) for a in args.a]
    data = points[0].to_dict() if len(points) == 1 else {'points': [p.to_dict() for p in points]}
    return emit(args, 'spectral', data, SPECTRAL_CSV_HEADER, [p.csv_row() for p in points])


def kernel(args) -> int:
    """Closed-form X_a(s, z) against the double-integral oracle"""
    tol = tolerance(args, 'kernel_rel')
    cases = []
    for a in args.a:
        params = {'a': a, 's_re': args.s.real, 's_im': args.s.imag, 'z_re': args.z.real, 'z_im': args.z.imag}
        cases.append(CheckReport.build('rep_kernel', params, spectral.rep_kernel(a, args.s, args.z),
                                       spectral.rep_kernel_oracle(a, args.s, args.z), tol))
    return emit_checks(args, 'kernel', cases)


def register(subparsers, parents):
    parser = subparsers.add_parser('spectral', parents=parents, help='A_a, B_a, E_a at s')
    parser.set_defaults(handler=spectral_points)

    parser = subparsers.add_parser('kernel', parents=parents, help='reproducing kernel X_a(s, z)')
    parser.add_argument('--z', type=parse_complex, default=complex(0.7), help='second argument re[,im]')
    parser.set_defaults(handler=kernel)
