"""Exception types shared across the package."""


class KickoutError(Exception):
    """Base class for all library errors."""


class ConfigError(KickoutError):
    """Invalid or inconsistent configuration document."""


class SchemaError(KickoutError):
    """Input document does not match the expected schema (missing column/field)."""


class OffCourtError(KickoutError):
    """Point lies outside the half-court frame."""


class InsufficientHistoryError(KickoutError):
    """Possession track does not cover the requested pre-shot window."""


class UnknownPlayerError(KickoutError):
    """Requested player id is not present in the track."""


class DegenerateFitError(KickoutError):
    """Model fit is ill-posed (constant input, single outcome, or separable data)."""


class NotConvergedError(KickoutError):
    """Iterative fit hit its iteration cap; carries the last iterate."""

    def __init__(self, message, last_model=None):
        super().__init__(message)
        self.last_model = last_model


class OutOfRangeError(KickoutError):
    """Argument outside the supported domain."""


class EmptyInputError(KickoutError):
    """Operation requires a non-empty input."""


class EmptyWindowError(EmptyInputError):
    """Trajectory window has no samples."""


class EmptyClusterError(EmptyInputError):
    """Cluster has no members."""


class MissingClassError(KickoutError):
    """Dataset lacks one of the shot classes required by the analysis."""


class NoPassDataError(KickoutError):
    """No corner shots with pass-origin information available."""


class TooFewPointsError(KickoutError):
    """Fewer data points than requested clusters."""


class NumericalFailureError(KickoutError):
    """Linear-program solve failed; message carries a condition report."""
