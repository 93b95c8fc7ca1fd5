"""Exception hierarchy shared across the package."""


class IsoPointsError(Exception):
    """Base class for every error raised by isopoints."""


class PreconditionError(IsoPointsError, ValueError):
    pass


class DomainError(IsoPointsError, ValueError):
    pass


class CapabilityError(IsoPointsError):
    """The input is valid but exceeds the desk-scale contract."""


class InvalidModelError(IsoPointsError, ValueError):
    pass


class NotOnCurveError(IsoPointsError, ValueError):
    pass


class NotAPointError(IsoPointsError, ValueError):
    pass


class BadReductionError(IsoPointsError, ValueError):
    pass


class InternalConsistencyError(IsoPointsError, AssertionError):
    """Two independent computations disagreed; this signals a bug."""


class HypothesisViolation(IsoPointsError, ValueError):
    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class VerificationFailed(IsoPointsError, AssertionError):
    pass


class EmptySystemError(IsoPointsError, ValueError):
    pass


class OfflineError(IsoPointsError):
    pass


class NotFoundError(IsoPointsError, LookupError):
    pass


class PayloadParseError(IsoPointsError, ValueError):
    def __init__(self, message, raw=None):
        super().__init__(message)
        self.raw = raw
