"""Exception types shared across the package."""


class QuditBellError(Exception):
    """Base class for all package-specific errors."""


class DimensionError(QuditBellError, ValueError):
    """Dimension is out of range, odd where even is required, or mismatched."""


class DimensionCapError(QuditBellError, ValueError):
    """Dimension exceeds the configured resource cap for dense bases."""


class ValidationError(QuditBellError, ValueError):
    """An input violates a structural invariant.

    The message names the violated invariant and the offending residual.
    """


class CertificationError(QuditBellError, RuntimeError):
    """A state could not be certified for perfect correlations, or the
    witness search failed; the message carries the search diagnostics."""
