"""Exception types shared across the package."""


class TwistcellError(Exception):
    """Base class for all package-specific errors."""


class NonSquare(TwistcellError):
    pass


class RankMismatch(TwistcellError):
    pass


class RankTooLarge(TwistcellError):
    pass


class BadParameter(TwistcellError):
    pass


class NotIdempotent(TwistcellError):
    pass


class NotRegular(TwistcellError):
    pass


class NoStarFixedIdempotent(TwistcellError):
    pass


class NoSuchRepresentative(TwistcellError):
    pass


class DegreeMismatch(TwistcellError):
    pass


class SizeMismatch(TwistcellError):
    pass


class SupportOutOfDomain(TwistcellError):
    pass


class UnknownLambda(TwistcellError):
    pass


class C3Violation(TwistcellError):
    pass


class InconsistentForm(TwistcellError):
    pass


class ValidationFailed(TwistcellError):
    pass


class ModePreconditionFailed(TwistcellError):
    pass


class AlphaNotUnit(TwistcellError):
    pass


class NotAModule(TwistcellError):
    pass
