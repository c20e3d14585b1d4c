"""Exception types shared across the package.

The command-line layer maps these onto process exit codes:
ValidationError -> 2, NumericalError -> 3, CheckFailure -> 4.
"""


class OscnetError(Exception):
    """Base class for package-specific errors."""


class ValidationError(OscnetError, ValueError):
    """Invalid input: bad shapes, out-of-range indices, violated preconditions."""


class CapacityError(ValidationError):
    """Requested object exceeds a configured size limit."""


class NumericalError(OscnetError, ArithmeticError):
    """Numerically infeasible computation (lost positive definiteness,
    singular pivot, non-normalizable reduced state)."""


class SchemeError(ValidationError):
    """Input relations are not an association scheme.

    When the failure is a non-constant intersection count, ``i``, ``j``, ``k``
    identify the violating relation triple: the product A_i A_j is not
    constant over the vertex pairs of relation k.
    """

    def __init__(self, message, i=None, j=None, k=None):
        super().__init__(message)
        self.i = i
        self.j = j
        self.k = k


class CheckFailure(OscnetError):
    """A reproduction check against embedded reference data failed."""
