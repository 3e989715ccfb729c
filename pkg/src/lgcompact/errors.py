"""Exception hierarchy shared by the library and the CLI exit-code mapping."""


class LGError(Exception):
    """Base class for all library errors."""


class LaurentParseError(LGError, ValueError):
    """Malformed polynomial text.  ``position`` is a 0-based character offset."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class NonMonomialDivisorError(LaurentParseError):
    pass


class UnknownVariableError(LaurentParseError):
    pass


class VariableCountMismatch(LGError, ValueError):
    pass


class ZeroPolynomialError(LGError, ValueError):
    pass


class NotFullDimensionalError(LGError, ValueError):
    pass


class OriginNotInteriorError(LGError, ValueError):
    pass


class DuplicateRayError(LGError, ValueError):
    pass


class NonFanoError(LGError, ValueError):
    pass


class SearchCapExceeded(LGError):
    pass


class NotNiceError(LGError, ValueError):
    pass


class UnsupportedConfiguration(LGError):
    """The blow-up bookkeeping has no rule for this configuration."""
