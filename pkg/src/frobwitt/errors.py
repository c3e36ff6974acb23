"""Exception hierarchy.

The CLI maps InvariantViolation to exit status 2 and ResourceBound to 3;
everything else derived from FrobWittError is malformed input (status 1).
"""


class FrobWittError(Exception):
    pass


class FieldError(FrobWittError):
    pass


class ShapeMismatch(FrobWittError, ValueError):
    """Operands of different length, ring, or module."""


class InvariantViolation(FrobWittError):
    pass


class ResourceBound(FrobWittError):
    pass


class WindowOverflow(ResourceBound):
    pass


class InsufficientDepth(ResourceBound):
    pass


class ParseError(FrobWittError, ValueError):
    pass
