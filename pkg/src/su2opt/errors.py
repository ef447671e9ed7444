"""Exception types shared across the package."""


class Su2OptError(Exception):
    """Base class for all library-specific failures."""


class NotUnitary(Su2OptError):
    """Complex pair is not (normalizably) a unitary row: |alpha|^2 + |beta|^2 far from 1."""


class BoundExceedsDrift(Su2OptError):
    """Requested control bound exceeds the drift speed; the model needs gamma <= 1."""


class OutsideDisk(Su2OptError):
    """Point lies outside the closed unit disk and cannot be classified."""


class Indeterminate(Su2OptError):
    """Departure-side probe could not establish a reliable sign."""


class RadiusUnreachable(Su2OptError):
    """The requested radius is below the curve's minimum radius."""


class DomainError(Su2OptError):
    """Arguments violate a function's stated domain."""


class NoBracket(Su2OptError):
    """Root bracketing failed: the function does not change sign on the interval."""


class DegeneratePhase(Su2OptError):
    """Diagonal target phase is 0 or 2*pi: the target is the identity (T = 0)."""


class Unreachable(Su2OptError):
    """The curve never reaches the requested radius."""


class NoConvergence(Su2OptError):
    """Iterative search failed to produce a solution within its budget."""


class AmbiguousBranch(Su2OptError):
    """Both radius-crossing branches match the target with indistinguishable times."""


class SingularAdjoint(Su2OptError):
    """Transverse adjoint norm collapsed; the maximum-principle control is undefined."""


class NotFound(Su2OptError):
    """Grid search found no curve passing within tolerance of the target."""
