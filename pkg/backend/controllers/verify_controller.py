"""
Verify Controller - runs a verification suite (verify)
"""
from models import REPORT_CSV_HEADER
from services import SuiteRunner, suite_names
from utils.response import exit_code_for

from .common import emit


def verify(args) -> int:
    """Run `--suite` on the worker pool; exit 1 when any check fails"""
    runner = SuiteRunner(max_workers=args.workers, profile=args.tol_profile, seed=args.seed)
    result = runner.run(args.suite)
    emit(args, 'verify', result.to_dict(timing=args.timing), REPORT_CSV_HEADER,
         [c.csv_row() for c in result.cases])
    return exit_code_for([result])


def register(subparsers, parents):
    parser = subparsers.add_parser('verify', parents=parents, help='run a verification suite')
    parser.add_argument('--suite', choices=suite_names(), default='all')
    parser.add_argument('--workers', type=int, default=None, help='worker threads (default MAX_WORKERS)')
    parser.add_argument('--timing', action='store_true',
                        help='write the wall time into summary.seconds')
    parser.set_defaults(handler=verify)
