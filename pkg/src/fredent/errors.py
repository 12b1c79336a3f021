"""Exception hierarchy.

Every error raised by the library derives from :class:`FredentError`, which
is itself a ``ValueError`` so callers that only care about bad input can
catch the builtin.
"""


class FredentError(ValueError):
    pass


class NotSquare(FredentError):
    pass


class NotHermitian(FredentError):
    pass


class NotPSD(FredentError):
    pass


class TraceNotOne(FredentError):
    pass


class NonFinite(FredentError):
    pass


class FunctionDomainError(FredentError):
    pass


class NegativeOrder(FredentError):
    pass


class ConvergenceDomainError(FredentError):
    pass


class OrderOutOfRange(FredentError):
    pass


class DimensionTooLarge(FredentError):
    pass


class LengthMismatch(FredentError):
    pass


class DimMismatch(FredentError):
    pass


class KeepOutOfRange(FredentError):
    pass


class SpectralRadiusOne(FredentError):
    pass


class NotMajorized(FredentError):
    pass


class SumMismatch(FredentError):
    pass


class WeightsInvalid(FredentError):
    pass


class NotUnitary(FredentError):
    pass


class DimFactorizationMismatch(FredentError):
    pass


class KrausConditionUnmet(FredentError):
    pass


class NotNormalized(FredentError):
    pass


class UnknownClaim(FredentError):
    pass


class UnknownExperiment(FredentError):
    pass
