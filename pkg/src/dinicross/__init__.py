"""Dini functions, Bessel cross-products, their zeros and Rayleigh sums."""

from .errors import (BracketError, ConvergenceError, DinicrossError, DomainError,
                     HypothesisError, LengthError, PoleError, SingularityError)
from .special_core import (EvalResult, FunctionId, SeriesConfig, bessel, cross_w,
                           derivative, dini, log_derivative, log_gamma, normalized,
                           pochhammer)

__all__ = [
    "BracketError", "ConvergenceError", "DinicrossError", "DomainError",
    "HypothesisError", "LengthError", "PoleError", "SingularityError",
    "EvalResult", "FunctionId", "SeriesConfig", "bessel", "cross_w", "derivative",
    "dini", "log_derivative", "log_gamma", "normalized", "pochhammer",
]
