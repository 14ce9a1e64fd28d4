"""Exception hierarchy shared by the whole package."""


class KGeoError(Exception):
    """Base class for all errors raised by kgeo."""


class AlgebraError(KGeoError, ArithmeticError):
    """Invalid arithmetic: division by zero, inverse of a non-unit, etc."""


class ReducibleError(AlgebraError):
    """A polynomial offered as a field modulus is reducible or uncertified."""


class FactorizationIncomplete(AlgebraError):
    """A polynomial could not be split into certified irreducible factors."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class PoleError(AlgebraError):
    """Evaluation of a rational function at one of its poles."""


class InvalidDatum(KGeoError, ValueError):
    """A relation datum or section violates its defining conditions."""


class ParseError(KGeoError, ValueError):
    """Syntax error in an expression string, with the offending position."""

    def __init__(self, message, position=None, text=None):
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class SchemaError(KGeoError, ValueError):
    """A JSON payload does not conform to the shipped schema."""
