"""
Identities Controller - the identity catalog (identities)
"""
import time

from config import get_tolerance
from services import identities

from .common import emit, emit_checks


def run_identities(args) -> int:
    """`--list` prints the catalog; otherwise draws and verifies every id (or just `--id`)"""
    if args.list:
        catalog = identities.list_catalog()
        return emit(args, 'identities', {'catalog': [{'id': key, 'description': text} for key, text in catalog]},
                    ['id', 'description'], [list(entry) for entry in catalog])

    count = args.draws or int(get_tolerance(args.tol_profile, 'draws'))
    ids = [args.id] if args.id else [key for key, _ in identities.list_catalog()]
    start = time.perf_counter()
    cases = []
    for key in ids:
        for case in identities.draw_cases(key, count, args.seed, args.tol_profile):
            if args.tol is not None:
                case = case.model_copy(update={'tol': args.tol})
            cases.append(identities.verify(case, args.tol_profile))
    return emit_checks(args, 'identities', cases, time.perf_counter() - start, timing=False)


def register(subparsers, parents):
    parser = subparsers.add_parser('identities', parents=parents, help='identity catalog')
    parser.add_argument('--list', action='store_true', help='print catalog ids with descriptions')
    parser.add_argument('--id', default=None, help='verify a single catalog id')
    parser.add_argument('--draws', type=int, default=None, help='parameter draws per id')
    parser.set_defaults(handler=run_identities)
