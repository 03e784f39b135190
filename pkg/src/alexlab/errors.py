"""Exception hierarchy shared by every module.

All errors derive from :class:`AlexlabError` (a ``ValueError``) so callers
such as the CLI can treat "bad input" uniformly.
"""


class AlexlabError(ValueError):
    pass


# polynomial arithmetic
class ZeroPolynomial(AlexlabError):
    pass


class NotDivisible(AlexlabError):
    pass


class DivideByZero(AlexlabError, ZeroDivisionError):
    pass


class InvalidIndex(AlexlabError):
    pass


class PolySyntaxError(AlexlabError):
    pass


# truncated group rings
class CtxMismatch(AlexlabError):
    pass


class NotAUnit(AlexlabError):
    pass


class IncompatibleLevels(AlexlabError):
    pass


class NotStabilized(AlexlabError):
    pass


# cyclic resultants
class EmptySequence(AlexlabError):
    pass


class NonDivisorClosedLevels(AlexlabError):
    pass


# knots
class BraidSyntaxError(AlexlabError):
    pass


class IndexOutOfRange(AlexlabError):
    pass


class NotAKnot(AlexlabError):
    pass


class NotASeifertMatrix(AlexlabError):
    pass


class MissingPresentation(AlexlabError):
    """Raised when a presentation matrix is needed but only Δ is known."""


class InternalDivisibilityFailure(RuntimeError):
    """A division that must be exact was not. Indicates a bug, not bad input."""
