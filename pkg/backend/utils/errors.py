"""
Error types shared by every service

Each error carries a stable code so reports and exit payloads can name it.
"""


class LabError(ValueError):
    """Base error for the lab"""
    code = 'LAB_ERROR'

    def __init__(self, message: str, code: str = None):
        super().__init__(message)
        if code is not None:
            self.code = code

    @property
    def message(self) -> str:
        return str(self)


class DomainError(LabError):
    """Argument outside an operation's contract"""
    code = 'DOMAIN_ERROR'


class PoleError(LabError):
    """Gamma or chi evaluated at a pole"""
    code = 'POLE_ERROR'


class AccuracyLossError(LabError):
    """A truncation bound or precision floor cannot be met"""
    code = 'ACCURACY_LOSS'


class SingularSystemError(LabError):
    """Eigen-decomposition or linear solve failed or is near singular"""
    code = 'SINGULAR_SYSTEM'


class ConvergenceError(LabError):
    """An accelerated tail failed its own error estimate"""
    code = 'CONVERGENCE_FAILURE'


class UsageError(LabError):
    """Command-line misuse"""
    code = 'USAGE_ERROR'
