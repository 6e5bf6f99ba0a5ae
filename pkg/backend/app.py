"""
Command-line entry point
"""
import argparse
import logging
import sys

from dotenv import load_dotenv

# Load environment variables BEFORE importing anything else
load_dotenv()

from config import get_config
from controllers import register_all
from controllers.common import common_parser, validate_args
from utils.errors import LabError
from utils.response import EXIT_USAGE, error_response

logger = logging.getLogger(__name__)


def configure_logging(level: str = None):
    """Log to stderr; stdout is reserved for reports written with `--out -`"""
    config = get_config()
    log_level = getattr(logging, (level or config.LOG_LEVEL).upper(), logging.INFO)
    logging.basicConfig(
        level=log_level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=[logging.StreamHandler(sys.stderr)],
    )


def create_parser() -> argparse.ArgumentParser:
    """Parser factory"""
    parser = argparse.ArgumentParser(
        prog='hankel-lab',
        description='Numerical lab for the H-transform with kernel J_0(2 sqrt(xy))',
    )
    parser.add_argument('--log-level', dest='log_level', default=None,
                        help='override LOG_LEVEL (DEBUG, INFO, WARNING)')
    subparsers = parser.add_subparsers(dest='command', metavar='command')
    subparsers.required = True
    register_all(subparsers, [common_parser()])
    return parser


def run(argv=None) -> int:
    """
    Parse argv, dispatch the sub-command and return its exit code

    Returns:
        0 on success, 1 when a check fails or a LabError escapes, 2 on usage errors
    """
    parser = create_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # --help exits 0, parse errors exit 2
        return EXIT_USAGE if e.code else 0

    configure_logging(args.log_level)
    logger.debug(f"Running {args.command} with {vars(args)}")
    try:
        validate_args(args)
        return args.handler(args)
    except LabError as e:
        logger.error(f"{args.command} failed: {e.code}: {e}")
        return error_response(e)


def main():
    sys.exit(run())


if __name__ == '__main__':
    main()
