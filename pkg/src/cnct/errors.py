"""Exception hierarchy shared by all modules."""


class CNCTError(Exception):
    """Base class for every error raised by this package."""


class DomainError(CNCTError, ValueError):
    """Arguments outside the mathematical domain of an operation."""


class PoleError(DomainError):
    """Evaluation hits a pole, e.g. (n + v) == 0."""


class ResourceLimitError(CNCTError):
    """A configured cap (digits, table size, index range) would be exceeded."""


class NonConvergenceError(CNCTError):
    """An inner loop hit its hard cap without satisfying its stopping test."""


class DegenerateTransformError(CNCTError, ArithmeticError):
    """The denominator of a sequence transform vanished at this order."""


class RemainderEstimateError(DegenerateTransformError):
    """A remainder estimate omega_n is zero, so s_n / omega_n is undefined."""


class UnsupportedDiagnosticsError(CNCTError):
    """Diagnostics that need an exact limit were requested without one."""
