"""Exception types shared across the library."""


class SteinRadarError(Exception):
    """Base class for library-specific failures."""


class SingularGibbs(SteinRadarError):
    """A symplectic eigenvalue is too close to 1/2 (pure mode), where the
    Gibbs matrix diverges."""


class ModeMismatch(SteinRadarError):
    """Two states with different mode counts were combined."""


class ConsistencyError(SteinRadarError):
    """An internal identity failed beyond numerical tolerance.

    Raised when a quantity that is real/symmetric/nonnegative by construction
    comes out otherwise by more than round-off allows; indicates a bug or an
    ill-conditioned input rather than ordinary round-off."""


class CapExceeded(SteinRadarError):
    """Truncation requirements exceed the configured hard index cap."""


class MassDeficit(SteinRadarError):
    """A truncated double sum captured less probability mass than its
    truncation design guarantees; signals a summation bug."""


class DegenerateVariance(SteinRadarError):
    """Berry-Esseen style thresholds are undefined at zero variance."""
