"""Exception types shared across the package.

Two broad classes matter for the CLI exit codes: bad input (exit 1) and
numerical failure on valid input (exit 2).
"""


class AAAKitError(Exception):
    """Base class for all package errors."""


class InputError(AAAKitError, ValueError):
    """Rejected input: bad shapes, duplicates, non-finite data, bad options."""


class NumericalError(AAAKitError, RuntimeError):
    """A computation on valid input failed or hit a documented singular case."""


class PoleAtSupportError(NumericalError):
    """Evaluation hit a support point whose barycentric weight is zero."""


class PoleAtInfinityError(NumericalError):
    """Value at infinity requested for a model whose weights sum to zero."""


class ConvergenceWarning(UserWarning):
    """An iteration returned a usable but possibly suboptimal result."""


class DegeneracyWarning(UserWarning):
    """A solve was rank deficient or otherwise degenerate; a minimizer was picked."""
