"""Exception and warning types shared across the package."""


class DstableError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(DstableError, ValueError):
    """A distribution parameter lies outside its admissible region."""


class AlphaOutOfRange(ParameterError):
    """The index parameter alpha is not in (0, 2]."""


class GammaSignViolation(ParameterError):
    """The dilation coefficient gamma has the wrong sign for the given alpha."""


class PoissonConventionViolation(ParameterError):
    """gamma = 0 is reserved for alpha = 1 (the Poisson/degenerate branch)."""


class DeltaBelowAlphaGamma(ParameterError):
    """The translation coefficient violates delta >= alpha*gamma."""


class RhoOutOfRange(ParameterError):
    """The broad-Sibuya shape rho is outside its admissible interval."""


class DegenerateDistribution(ParameterError):
    """The point mass at zero has no compound representation with rate > 0."""


class DeltaLimViolation(ParameterError):
    """The extreme-stable location is too small for Poisson mixing."""


class NoScaleForDegenerate(ParameterError):
    """The scale inversion for alpha != 1 has no positive root."""


class InvalidTranslation(ParameterError):
    """A (negative) translation would leave the valid parameter region."""


class AlphaMismatch(ParameterError):
    """Convolution requires both operands to share the same alpha."""


class NotSelfDecomposableAtRho(DstableError):
    """The self-decomposition remainder is not a valid distribution at this rho."""


class DomainError(DstableError, ValueError):
    """An argument lies outside the domain of the requested evaluation."""


class QuadratureInsufficiency(DstableError):
    """Coefficient extraction left an imaginary residue above tolerance."""


class IndexBeyondTable(DstableError, IndexError):
    """The requested index exceeds the computed table; extend the table."""


class QuantileBeyondTable(DstableError, ValueError):
    """The requested quantile lies in the uncomputed tail of the table."""


class InternalConsistencyError(DstableError):
    """A computed mass was negative by more than roundoff dust."""


class TailBoundUnreachable(UserWarning):
    """n_max was reached before the tail mass dropped below the bound.

    Non-fatal: the table is still returned with its honest tail mass.
    """
