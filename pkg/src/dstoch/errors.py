"""Exception and warning types shared across the package."""


class DstochError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(DstochError, ValueError):
    """A matrix has the wrong shape for the requested operation."""


class FormatError(DstochError, ValueError):
    """Text input does not match the matrix or spectrum grammar."""


class PreconditionError(DstochError, ValueError):
    """An operation's input contract is violated."""


class InfeasibleError(PreconditionError):
    """A requested shift lies below the nonnegativity threshold.

    ``column`` is the 1-based index of a column forcing the bound and
    ``threshold`` the least feasible value.  ``report`` carries extra
    context when the caller produced one.
    """

    def __init__(self, message, column=None, threshold=None, report=None):
        super().__init__(message)
        self.column = column
        self.threshold = threshold
        self.report = report


class ConjugacyError(DstochError, ValueError):
    """A spectrum is not closed under complex conjugation."""


class MembershipError(DstochError, ValueError):
    """A matrix is not (numerically) a member of the required matrix set."""


class BasisError(DstochError, ValueError):
    """An orthogonal basis failed its validity checks."""


class NormalizationError(DstochError, RuntimeError):
    """Power iteration failed to produce a strictly positive eigenvector."""


class PerronWarning(UserWarning):
    """A designated dominant spectrum entry does not actually dominate."""
