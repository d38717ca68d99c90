"""Exception types raised across the package.

Every error derives from :class:`DCAError` so callers can catch the whole
family at once; the ones that describe bad arguments also derive from
``ValueError``.
"""


class DCAError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(DCAError, ValueError):
    pass


class SizeExceeded(DCAError):
    """An enumeration would exceed its configured budget."""


class ParseError(DCAError, ValueError):
    pass


class EmptySet(DCAError, ValueError):
    pass


class EmptyInput(DCAError, ValueError):
    pass


class SpanFailure(DCAError):
    """Candidate columns cannot complete a basis of the target subspace."""


class SingularBasis(DCAError, ValueError):
    pass


class NotInPolytope(DCAError, ValueError):
    pass


class ZeroDirection(DCAError, ValueError):
    pass


class NotUnimodular(DCAError, ValueError):
    pass


class NotUnimodularTransform(DCAError, ValueError):
    pass


class NotSubmodular(DCAError, ValueError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class NotSupermodular(NotSubmodular):
    pass


class NotParamodular(NotSubmodular):
    pass


class NotInSum(DCAError, ValueError):
    pass


class ClassViolation(DCAError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class IntegralityFailure(DCAError):
    """Coefficients of the difference vector in the chosen column basis are
    not integral (or leak outside the first ``t`` columns).

    ``state`` holds the partial decomposition record at the moment of failure.
    """

    def __init__(self, msg, state=None):
        super().__init__(msg)
        self.state = state or {}


class FixtureMismatch(DCAError):
    pass
