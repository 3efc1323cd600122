"""Exception hierarchy.

Every domain error carries a short ``code`` so the CLI and certificate
checks can report it without parsing messages.
"""


class SvlabError(Exception):
    """Base class for all domain errors (CLI exit code 2)."""

    code = "Error"

    def __init__(self, message="", **context):
        super().__init__(message or self.code)
        self.context = context


class IndexOutOfRange(SvlabError):
    code = "IndexOutOfRange"


class NotAChainComplex(SvlabError):
    code = "NotAChainComplex"


class DimensionOutOfRange(SvlabError):
    code = "DimensionOutOfRange"


class DimensionZero(DimensionOutOfRange):
    code = "DimensionZero"


class DimensionTop(DimensionOutOfRange):
    code = "DimensionTop"


class NotClosed(SvlabError):
    code = "NotClosed"


class NotOrientable(SvlabError):
    code = "NotOrientable"


class WrongComplex(SvlabError):
    code = "WrongComplex"


class MismatchedComplexOrDimension(WrongComplex):
    code = "MismatchedComplexOrDimension"


class NotACycle(SvlabError):
    code = "NotACycle"


class NotInSpan(SvlabError):
    code = "NotInSpan"


class PartialMap(SvlabError):
    code = "PartialMap"


class PartialFunction(SvlabError):
    code = "PartialFunction"


class NotACocycle(SvlabError):
    code = "NotACocycle"


class NotSimplicialMap(SvlabError):
    code = "NotSimplicialMap"


class UnsupportedDimension(SvlabError):
    code = "UnsupportedDimension"


class NotACircle(SvlabError):
    code = "NotACircle"


class LengthTooShort(SvlabError):
    code = "LengthTooShort"


class GraphTooLarge(SvlabError):
    code = "GraphTooLarge"


class NotDivisors(SvlabError):
    code = "NotDivisors"


class Inconsistent(SvlabError):
    """Raised when a check that must always hold is violated (exit code 4)."""

    code = "Inconsistent"


class Infeasible(SvlabError):
    code = "Infeasible"


class Unbounded(SvlabError):
    code = "Unbounded"


class ParseError(Exception):
    """Malformed DCX input (CLI exit code 3)."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
