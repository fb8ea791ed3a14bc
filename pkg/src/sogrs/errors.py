"""Exception hierarchy shared by all modules."""


class SogrsError(Exception):
    """Base class for every error raised by the package."""


# field
class NotPrime(SogrsError):
    pass


class ReducibleModulus(SogrsError):
    pass


class UnsupportedField(SogrsError):
    pass


class FieldTooLarge(SogrsError):
    pass


class DivisionByZero(SogrsError, ZeroDivisionError):
    pass


class LogOfZero(SogrsError):
    pass


class BadSubfield(SogrsError):
    pass


class NotAResidue(SogrsError):
    pass


# linalg / codes
class DimensionMismatch(SogrsError, ValueError):
    pass


class EmptyResult(SogrsError):
    pass


class RankDeficient(SogrsError, ValueError):
    pass


# grs
class DuplicateLocators(SogrsError, ValueError):
    pass


class DegreeTooHigh(SogrsError):
    pass


class DegreeMismatch(SogrsError):
    pass


class NotMonic(SogrsError):
    pass


class BadCertificate(SogrsError, ValueError):
    pass


# constructions
class InvalidParams(SogrsError, ValueError):
    pass


class CosetCollision(InvalidParams):
    pass


# derive
class HullTooSmall(SogrsError):
    pass


class DistanceBound(SogrsError):
    pass


# quantum
class OddDegree(SogrsError):
    pass


class NotHermitianSO(SogrsError):
    pass


class NotMds(SogrsError):
    pass


class RangeError(SogrsError, ValueError):
    pass


# cli / io
class ParseError(SogrsError, ValueError):
    pass
