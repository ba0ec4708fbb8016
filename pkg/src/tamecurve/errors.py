"""Exception hierarchy shared by all tamecurve modules."""


class TameCurveError(Exception):
    """Base class for all library errors."""


class DivisionByZero(TameCurveError, ZeroDivisionError):
    pass


class Inconsistent(TameCurveError):
    """An inhomogeneous linear system has no solution."""


class UnsupportedField(TameCurveError):
    pass


class InfiniteField(UnsupportedField):
    pass


class ReduciblePolynomial(TameCurveError):
    pass


class NotAssociative(TameCurveError):
    pass


class ElementInBase(TameCurveError):
    pass


class NonIntegralInvariant(TameCurveError):
    pass


class UnsupportedShape(TameCurveError):
    pass


class ExactnessFailure(TameCurveError):
    def __init__(self, message, data=None):
        super().__init__(message)
        self.data = data or {}


class NonTerminating(TameCurveError):
    pass


class PresentationMismatch(TameCurveError):
    def __init__(self, message, kernel_basis=None):
        super().__init__(message)
        self.kernel_basis = kernel_basis


class DegreeBoundExceeded(TameCurveError):
    pass


class SearchSpaceTooLarge(TameCurveError):
    pass


class IncompletePrimeData(TameCurveError):
    pass


class NotDefined(TameCurveError):
    pass


class NoMatch(TameCurveError):
    pass


class UnknownVerdict(TameCurveError):
    """A decision procedure could not reach a verdict within its bound."""


class SpecParseError(TameCurveError):
    def __init__(self, message, field=None, line=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.field = field
        self.line = line
