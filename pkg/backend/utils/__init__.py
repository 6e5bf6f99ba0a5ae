"""Utils package"""
from .errors import (
    LabError,
    DomainError,
    PoleError,
    AccuracyLossError,
    SingularSystemError,
    ConvergenceError,
    UsageError
)
from .response import (
    EXIT_OK,
    EXIT_FAILED_CHECKS,
    EXIT_USAGE,
    success_response,
    error_response,
    error_payload,
    exit_code_for
)
from .validators import validate_finite, validate_positive, validate_grid_size, validate_report_format
from .path_utils import resolve_output_path

__all__ = [
    'LabError',
    'DomainError',
    'PoleError',
    'AccuracyLossError',
    'SingularSystemError',
    'ConvergenceError',
    'UsageError',
    'EXIT_OK',
    'EXIT_FAILED_CHECKS',
    'EXIT_USAGE',
    'success_response',
    'error_response',
    'error_payload',
    'exit_code_for',
    'validate_finite',
    'validate_positive',
    'validate_grid_size',
    'validate_report_format',
    'resolve_output_path'
]
