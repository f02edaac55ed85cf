"""Exception types raised across the package.

The CLI maps these onto exit codes: domain/parameter problems exit 2,
numerical failures exit 3 and failed verification suites exit 4.
"""


class LWPotError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(LWPotError, ValueError):
    """An argument lies outside the domain where the quantity is real/defined."""


class ParameterError(LWPotError, ValueError):
    """A parameter combination is forbidden (pole, degenerate map, ...)."""


class SingularityError(DomainError):
    """Evaluation requested exactly at (or too close to) a singular point."""


class ConvergenceError(LWPotError, ArithmeticError):
    """An iterative or series evaluation failed to reach its tolerance."""


class VerificationError(LWPotError):
    """Two independent computation paths disagree."""
