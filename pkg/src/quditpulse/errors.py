"""Exception types shared across the package."""


class QuditPulseError(Exception):
    """Base class for all package errors."""


class InvalidDimensionError(QuditPulseError, ValueError):
    """Qudit dimension outside the supported range (d >= 2)."""


class RepresentationError(QuditPulseError, ValueError):
    """An operator violates an invariant of its representation.

    The message names the violated invariant (hermiticity, exchange
    symmetry, single-body contamination, asymmetry, ...).
    """


class DocumentError(QuditPulseError, ValueError):
    """A JSON/CSV document is malformed or fails schema checks."""


class ResourceLimitError(QuditPulseError, RuntimeError):
    """A requested computation exceeds the configured size cap."""
