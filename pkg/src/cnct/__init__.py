"""Combined nonlinear-condensation transformation (CNCT) and its applications."""
from .errors import (CNCTError, DegenerateTransformError, DomainError, NonConvergenceError,
                     PoleError, RemainderEstimateError, ResourceLimitError,
                     UnsupportedDiagnosticsError)
from .numerics import PrecisionContext, big, native

__all__ = [
    "CNCTError", "DegenerateTransformError", "DomainError", "NonConvergenceError",
    "PoleError", "RemainderEstimateError", "ResourceLimitError",
    "UnsupportedDiagnosticsError", "PrecisionContext", "big", "native",
]
