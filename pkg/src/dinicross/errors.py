"""Exception hierarchy shared by every module."""


class DinicrossError(ValueError):
    """Base class for all library errors."""


class DomainError(DinicrossError):
    """Argument outside the region where a representation is valid."""


class ConvergenceError(DinicrossError):
    """Series or iteration did not reach the requested tolerance."""


class BracketError(DinicrossError):
    """No sign change where one was required."""


class PoleError(DinicrossError):
    """Evaluation point sits on a zero of the denominator."""


class LengthError(DinicrossError):
    """Coefficient sequence shorter than the requested recursion depth."""


class HypothesisError(DinicrossError):
    """Parameters violate the hypothesis window of a claim."""


class SingularityError(DinicrossError):
    """Point too close to a singular point of a differential equation."""
