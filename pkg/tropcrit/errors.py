"""Exceptions raised by tropcrit."""


class TropcritError(Exception):
    """Base class for all tropcrit errors."""


class NovikovZeroDivision(TropcritError, ZeroDivisionError):
    """Inverting the zero series."""


class NegativeValuation(TropcritError, ValueError):
    """exp of a series with negative valuation."""


class RankDeficient(TropcritError, ValueError):
    """Integer matrix has lower rank than its column count."""


class IndexOutOfRange(TropcritError, IndexError):
    pass


class DimensionMismatch(TropcritError, ValueError):
    pass


class UnsupportedDimension(TropcritError, ValueError):
    """Exact enumeration requested above the supported ambient dimension."""


class LengthMismatch(TropcritError, ValueError):
    pass


class ZeroPolynomial(TropcritError, ValueError):
    pass


class ZeroCoordinate(TropcritError, ZeroDivisionError):
    """Evaluating a Laurent polynomial with a zero coordinate."""


class SingularJacobian(TropcritError, ArithmeticError):
    """Initial-form Jacobian is singular at the seed: degenerate critical point."""


class NoRoot(TropcritError, ArithmeticError):
    """Seed does not solve the initial-form system."""


class InvalidPolytope(TropcritError, ValueError):
    """Facet data is unbounded, empty, or has a redundant facet."""


class ParseError(TropcritError, ValueError):
    """Malformed problem input."""
