"""
Data validation utilities
"""
import math
from numbers import Number

from .errors import DomainError

# Sign tokens accepted by the phi/psi/determinant operations
SIGNS = {'+', '-'}

# Kernel families a Nystrom operator can be built from
KERNEL_IDS = {'standard', 'extended', 'custom'}

# Report sinks
REPORT_FORMATS = {'csv', 'json'}

MIN_GRID_NODES = 4
MAX_GRID_NODES = 4096


def validate_sign(sign: str) -> int:
    """Validate a +/- token and return it as +1/-1"""
    if sign not in SIGNS:
        raise DomainError(f"sign must be '+' or '-', got {sign!r}")
    return 1 if sign == '+' else -1


def validate_kernel_id(kernel_id: str) -> str:
    """Validate kernel id"""
    if kernel_id not in KERNEL_IDS:
        raise DomainError(f"Unknown kernel id: {kernel_id}")
    return kernel_id


def validate_report_format(fmt: str) -> str:
    """Validate report format"""
    if fmt not in REPORT_FORMATS:
        raise DomainError(f"Unknown report format: {fmt}")
    return fmt


def validate_finite(name: str, value) -> None:
    """Reject NaN/inf scalars (real or complex)"""
    if not isinstance(value, Number):
        raise DomainError(f"{name} must be a number, got {type(value).__name__}")
    z = complex(value)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"{name} must be finite, got {value}")


def validate_positive(name: str, value: float) -> float:
    """Validate a strictly positive real"""
    validate_finite(name, value)
    if isinstance(value, complex) or value <= 0:
        raise DomainError(f"{name} must be > 0, got {value}")
    return float(value)


def validate_nonnegative(name: str, value: float) -> float:
    """Validate a non-negative real"""
    validate_finite(name, value)
    if isinstance(value, complex) or value < 0:
        raise DomainError(f"{name} must be >= 0, got {value}")
    return float(value)


def validate_grid_size(n: int) -> int:
    """Validate Gauss-Legendre node count"""
    if not isinstance(n, int) or isinstance(n, bool):
        raise DomainError(f"n must be an integer, got {n!r}")
    if not MIN_GRID_NODES <= n <= MAX_GRID_NODES:
        raise DomainError(f"n must lie in [{MIN_GRID_NODES}, {MAX_GRID_NODES}], got {n}")
    return n


def validate_strip(name: str, s: complex, lower: float = None, upper: float = None) -> complex:
    """Validate that Re(s) lies in the open strip (lower, upper)"""
    validate_finite(name, s)
    s = complex(s)
    if lower is not None and not s.real > lower:
        raise DomainError(f"Re({name}) must be > {lower}, got {s.real}")
    if upper is not None and not s.real < upper:
        raise DomainError(f"Re({name}) must be < {upper}, got {s.real}")
    return s
