"""Exception hierarchy for the ellid package."""


class EllidError(Exception):
    """Base class for all errors raised by this package."""


class ZeroArgument(EllidError):
    """Theta function called with argument 0."""


class TruncationNotConverged(EllidError):
    """Theta tail bound not met within the configured number of terms."""


class DivisionByZeroFactor(EllidError):
    """A reciprocal shifted-factorial factor vanishes (within pole tolerance)."""


class PoleProximity(EllidError):
    """A denominator theta factor is closer to zero than the pole tolerance."""


class NonIntegerExponent(EllidError):
    """Exact q-mode requires integer exponents; a fractional one was produced."""


class OutOfRange(EllidError):
    """Index outside the valid range (e.g. binomial with k < 0 or k > n)."""


class DegenerateDenominator(EllidError):
    """A telescoping denominator (u, v or t_0) vanishes on the summation range."""


class UnknownTheorem(EllidError):
    """No telescoping builder registered under this name."""


class UnknownIdentity(EllidError):
    """Identity id not present in the catalog."""


class UnknownEdge(EllidError):
    """No degeneration edge registered for this (parent, child) pair."""


class DomainRejected(EllidError):
    """Parameter draw hits a pole / degenerate denominator of the identity.

    Carries a short description of the offending quantity in args[0].
    """


class ModeUnsupported(EllidError):
    """Identity does not support the requested verification mode."""


class ResamplingExhausted(EllidError):
    """No admissible parameter draw found within max_resamples attempts."""
