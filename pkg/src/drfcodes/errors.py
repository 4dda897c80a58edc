"""Exception hierarchy.

Every error raised on purpose by the library derives from :class:`DRFError`,
so callers (the CLI in particular) can catch one type and report the class
name as a short diagnostic.
"""


class DRFError(Exception):
    """Base class for all library errors."""

    #: CLI exit status for this kind of failure (1 = validation error).
    exit_code = 1


# -- fields --------------------------------------------------------------

class NonPrimeCharacteristic(DRFError):
    pass


class UnsupportedDegree(DRFError):
    pass


class DivisionByZero(DRFError, ZeroDivisionError):
    pass


class ZeroToNegativePower(DRFError, ZeroDivisionError):
    pass


class FieldNotOrderFourPower(DRFError):
    pass


class BadFieldIdentifier(DRFError):
    pass


# -- linear algebra ------------------------------------------------------

class DimensionMismatch(DRFError):
    pass


class FieldMismatch(DRFError):
    pass


class SingularMatrix(DRFError):
    pass


# -- codes ---------------------------------------------------------------

class FieldTooSmall(DRFError):
    pass


class FieldOrderNotFourPower(DRFError):
    pass


class BadLambdas(DRFError):
    pass


class BadPartition(DRFError):
    pass


class NotMDS(DRFError):
    pass


class TooManyErasures(DRFError):
    exit_code = 3


class InconsistentSymbols(DRFError):
    exit_code = 3


# -- repair --------------------------------------------------------------

class BadNodeIndex(DRFError):
    pass


class BadHelperIndex(DRFError):
    pass


class UsefulDataRankDeficient(DRFError):
    pass


class SingularUsefulData(DRFError):
    pass


class MissingSymbols(DRFError):
    pass


# -- bounds / oracle -----------------------------------------------------

class BadParameters(DRFError):
    pass


class BadLength(DRFError):
    pass


class FieldTooLarge(DRFError):
    pass


# -- files ---------------------------------------------------------------

class ConfigError(DRFError):
    pass


class ShardFormatError(DRFError):
    exit_code = 3


class HeaderMismatch(DRFError):
    exit_code = 3
