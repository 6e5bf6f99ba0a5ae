"""
Expansion Controller - the isometric expansion k -> (f, g) of a sampled input (expand)
"""
import csv
import logging

from services import expansion
from utils.errors import UsageError
from utils.path_utils import find_input_file
from utils.validators import validate_grid_size

from .common import emit, usage_errors

logger = logging.getLogger(__name__)


def read_samples(path: str):
    """`x,value` rows; a non-numeric first row is taken as a header"""
    file_path = find_input_file(path)
    if not file_path.is_file():
        raise UsageError(f"Input file not found: {file_path}")
    xs, values = [], []
    with open(file_path, newline='', encoding='utf-8') as f:
        for index, row in enumerate(csv.reader(f)):
            if not row:
                continue
            try:
                x, value = float(row[0]), float(row[1])
            except (ValueError, IndexError):
                if index == 0:
                    continue
                raise UsageError(f"{file_path}:{index + 1}: expected x,value")
            xs.append(x)
            values.append(value)
    logger.debug(f"Read {len(xs)} samples from {file_path}")
    return xs, values


def expand(args) -> int:
    """
    Forward map (or the Laguerre route) of the input; `--apply-h` reports the
    image of H, i.e. (f, -g)
    """
    with usage_errors():
        n = validate_grid_size(args.n)
    if args.input:
        xs, values = read_samples(args.input)
        k = expansion.gridfn_from_samples(xs, values, n)
    else:
        k = expansion.gaussian_bump(n=n)

    if args.route == 'laguerre':
        pair = expansion.laguerre_oracle(k, args.laguerre_n)
    else:
        pair = expansion.forward(k)
    if args.apply_h:
        pair = expansion.negate_g(pair)

    header, rows = pair.csv_rows()
    data = {
        'route': args.route,
        'apply_h': args.apply_h,
        'support': k.grid.hi,
        'norm2_in': k.norm2(),
        'norm2_out': pair.norm2(),
        'y': pair.f.grid.nodes.tolist(),
        'f': [row[1] for row in rows],
        'g': [row[2] for row in rows],
    }
    return emit(args, 'expand', data, header, rows)


def register(subparsers, parents):
    parser = subparsers.add_parser('expand', parents=parents, help='expansion pair (f, g) of an input')
    parser.add_argument('--input', default=None, help='CSV of x,value samples; a Gaussian bump when omitted')
    parser.add_argument('--route', choices=['forward', 'laguerre'], default='forward')
    parser.add_argument('--laguerre-n', dest='laguerre_n', type=int, default=expansion.LAGUERRE_MAX)
    parser.add_argument('--apply-h', dest='apply_h', action='store_true', help='report the pair of Hk')
    parser.set_defaults(handler=expand)
