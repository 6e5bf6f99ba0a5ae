"""
Shared pieces of the sub-command handlers: the common flag set, flag parsing
and report emission
"""
import argparse
import logging
from contextlib import contextmanager
from typing import List, Optional

from config import get_config, get_tolerance
from models import CheckReport, REPORT_CSV_HEADER, SuiteResult
from utils.errors import DomainError, UsageError
from utils.response import exit_code_for, success_response
from utils.validators import (validate_finite, validate_grid_size, validate_nonnegative,
                              validate_positive, validate_report_format)

logger = logging.getLogger(__name__)


def parse_complex(text: str) -> complex:
    """`re[,im]` -> complex"""
    parts = text.split(',')
    if len(parts) > 2:
        raise argparse.ArgumentTypeError(f"expected re[,im], got {text!r}")
    try:
        values = [float(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected re[,im], got {text!r}")
    return complex(values[0], values[1] if len(values) == 2 else 0.0)


def parse_range(text: str):
    """`lo,hi` -> (lo, hi)"""
    parts = text.split(',')
    try:
        lo, hi = (float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo,hi, got {text!r}")
    return lo, hi


def common_parser() -> argparse.ArgumentParser:
    """Flags every sub-command accepts"""
    config = get_config()
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument('--a', type=float, nargs='+', default=[1.0],
                        help='endpoint a (several values sweep)')
    parser.add_argument('--n', type=int, default=config.DEFAULT_N, help='Gauss-Legendre node count')
    parser.add_argument('--s', type=parse_complex, default=complex(0.5), help='complex argument re[,im]')
    parser.add_argument('--tol', type=float, default=None, help='override the profile tolerance')
    parser.add_argument('--out', default=None, help="report path; '-' for stdout")
    parser.add_argument('--format', choices=['csv', 'json'], default='json')
    parser.add_argument('--seed', type=int, default=config.DEFAULT_SEED)
    parser.add_argument('--tol-profile', dest='tol_profile', default=config.DEFAULT_TOL_PROFILE,
                        choices=['default', 'strict', 'fast'])
    return parser


def tolerance(args, key: str) -> float:
    """--tol when given, else the named profile tolerance"""
    if args.tol is not None:
        return args.tol
    return get_tolerance(args.tol_profile, key)


def emit(args, command: str, data, header=None, rows=None) -> int:
    """Write a plain (non-check) report"""
    return success_response(data, command, args.format, args.out, header, rows)


def emit_checks(args, command: str, cases: List[CheckReport], wall_time: float = 0.0,
                timing: Optional[bool] = False) -> int:
    """Write check reports in the suite layout and return 0 or 1"""
    result = SuiteResult.assemble(command, cases, wall_time)
    if result.fail_count:
        logger.warning(f"{command}: {result.fail_count} of {len(result.cases)} checks failed")
    emit(args, command, result.to_dict(timing=timing), REPORT_CSV_HEADER,
         [c.csv_row() for c in result.cases])
    return exit_code_for([result])


@contextmanager
def usage_errors():
    """Re-raise DomainError from flag validation as UsageError (exit 2)"""
    try:
        yield
    except DomainError as e:
        raise UsageError(str(e)) from e


def validate_args(args) -> None:
    """
    Check the shared flags before a handler runs

    Raises:
        UsageError: a flag value outside its range
    """
    with usage_errors():
        validate_grid_size(args.n)
        for a in args.a:
            validate_nonnegative('a', a)
        validate_finite('s', args.s)
        if args.tol is not None:
            validate_positive('tol', args.tol)
        validate_report_format(args.format)
        for name in ('workers', 'draws'):
            value = getattr(args, name, None)
            if value is not None:
                validate_positive(name, value)
