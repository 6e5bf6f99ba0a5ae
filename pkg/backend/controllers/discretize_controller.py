"""
Discretize Controller - Nystrom solutions phi_a^{+-} and psi_a^{+-} (phi)
"""
import numpy as np

from services import discretize
from utils.validators import validate_grid_size, validate_positive

from .common import emit, usage_errors


def phi(args) -> int:
    """Solution on the Gauss-Legendre nodes; phi also reports the closed form and its distance"""
    with usage_errors():
        a = validate_positive('a', args.a[0])
        n = validate_grid_size(args.n)
    grid = discretize.make_grid(a, n)
    solver = discretize.solve_phi if args.kind == 'phi' else discretize.solve_psi
    fn = solver(a, args.sign, grid)
    header, rows = fn.csv_rows()

    data = {
        'a': a,
        'kind': args.kind,
        'sign': args.sign,
        'x': grid.nodes.tolist(),
        'values': np.real(fn.values).tolist(),
        'endpoint': float(np.real(discretize.interpolate(fn, a))),
    }
    if args.kind == 'phi':
        closed = discretize.closed_phi_fn(a, args.sign, grid)
        data['closed'] = closed.values.tolist()
        data['max_abs_err'] = float(np.max(np.abs(fn.values - closed.values)))
    return emit(args, 'phi', data, header, rows)


def register(subparsers, parents):
    parser = subparsers.add_parser('phi', parents=parents, help='integral-equation solutions on (0, a)')
    parser.add_argument('--sign', choices=['+', '-'], default='+')
    parser.add_argument('--kind', choices=['phi', 'psi'], default='phi')
    parser.set_defaults(handler=phi)
