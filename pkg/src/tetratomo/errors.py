"""Exception types raised across the package."""


class TetratomoError(ValueError):
    """Base class for all domain errors."""


class NotHermitian(TetratomoError):
    pass


class DimensionMismatch(TetratomoError):
    pass


class BadAxis(TetratomoError):
    pass


class UnphysicalBloch(TetratomoError):
    pass


class NotNormalized(TetratomoError):
    pass


class NonPhysicalState(TetratomoError):
    pass


class OutOfRange(TetratomoError):
    pass


class IndexingMismatch(TetratomoError):
    """Grid-indexed and detector-indexed Wigner arrays were mixed."""


class NoValidStriation(TetratomoError):
    """No affine-plane line structure turns the operator set into MUB projectors."""


class MissingAnnouncements(TetratomoError):
    pass
