"""Exception hierarchy.

``ValidationError`` subclasses map to CLI exit code 2, ``ConsistencyError``
subclasses to exit code 3.
"""


class PeriodCohError(Exception):
    pass


class ValidationError(PeriodCohError, ValueError):
    pass


class ConsistencyError(PeriodCohError, RuntimeError):
    pass


class InvalidCartanSpec(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class InvalidAutomorphism(ValidationError):
    pass


class GroupTooLarge(ValidationError):
    pass


class NotDominant(ValidationError):
    pass


class MuNotGaloisStable(ValidationError):
    pass


class FrameMismatch(ValidationError):
    pass


class InvalidMu(ValidationError):
    pass


class NotBasic(ValidationError):
    pass


class DenominatorNotDividing(ValidationError):
    pass


class EmptyPeriodDomain(ValidationError):
    pass


class GaloisIncompatible(ValidationError):
    pass


class DualBasisViolation(ValidationError):
    pass


class BadSubset(ValidationError):
    pass


class BadIndex(ValidationError):
    pass


class EmptyBoundary(ValidationError):
    pass


class UnknownIndex(ValidationError):
    pass


class EvenPrimeUnsupported(ValidationError):
    pass


class OrbitInconsistency(ConsistencyError):
    pass
