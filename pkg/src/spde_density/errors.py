"""Exception types shared across the package."""


class SpdeDensityError(Exception):
    """Base class for all library errors."""


class InvalidParameter(SpdeDensityError):
    """One or more model invariants are violated.

    Carries ``violations``, a list of ``(field, reason)`` pairs so callers
    can report every problem at once.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        lines = "; ".join(f"{field}: {reason}" for field, reason in self.violations)
        super().__init__(f"invalid parameters: {lines}")


class DegenerateRobin(SpdeDensityError):
    """A Robin-boundary denominator vanishes; the lift is undefined."""


class DegenerateVariance(SpdeDensityError):
    """Variance is zero (or negative) where a proper density was requested."""


class DegenerateLaw(SpdeDensityError):
    """Pointwise density queried on an atomic law; use interval masses."""


class DegenerateKernel(SpdeDensityError):
    """Transition kernel collapsed to an atom where a density was required."""


class DegenerateInitialLaw(SpdeDensityError):
    """Initial-time law is an atom, so the backward representation is unusable."""


class NonPositiveDiffusion(SpdeDensityError):
    """Diffusion coefficient is not strictly positive on the requested range."""


class NegativeDiffusion(SpdeDensityError):
    """A negative diffusion value was encountered during path simulation."""


class RegionViolation(SpdeDensityError):
    """(u, x) lies outside the supported sign regions."""


class WindowViolation(SpdeDensityError):
    """x lies outside the model's spatial window."""


class TailNotCertified(SpdeDensityError):
    """Series truncation cap reached before the tail bound met the tolerance."""


class QuadratureFailure(SpdeDensityError):
    """Adaptive quadrature exceeded its refinement budget."""


class ParseError(SpdeDensityError):
    """Configuration text could not be parsed."""

    def __init__(self, line, reason):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class UnknownKey(SpdeDensityError):
    """Configuration contains a key outside the documented schema."""

    def __init__(self, key):
        self.key = key
        super().__init__(f"unknown key: {key}")
