"""Exception types shared across the package.

The CLI maps these onto its exit-code contract: usage/validation problems
exit 2, numerical solver failures exit 3, violated checks exit 4.
"""


class ParameterError(ValueError):
    """A parameter is outside its admissible range."""


class NoTrivialBranchError(ParameterError):
    """Load is at or beyond the end of the trivial branch."""


class NotDestabilizingError(ValueError):
    """Compressiveness C is not positive, so the load ratio is undefined."""


class ShapeError(ValueError):
    """Field does not have the structure an operation requires."""


class SolverError(RuntimeError):
    """An iterative or eigen solver failed to meet its tolerance."""


class CheckFailure(AssertionError):
    """A verified inequality or identity does not hold."""
