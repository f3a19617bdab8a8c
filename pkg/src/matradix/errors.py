"""Exception types shared across the toolkit.

The CLI maps these onto exit codes: system/config problems exit 2,
domain errors exit 3, undecidable queries exit 4.
"""


class MatradixError(Exception):
    """Base class for all toolkit errors."""


class ConfigError(MatradixError):
    """A system definition is malformed or out of model."""


class BorderlineSpectrum(ConfigError):
    """An eigenvalue modulus sits within tolerance of the unit circle."""


class NotExpansive(ConfigError):
    """The base matrix has an eigenvalue of modulus <= 1."""


class WrongDigitCount(ConfigError):
    """len(digits) != |det B|."""


class IncompleteDigitSet(ConfigError):
    """Two digits share a residue class mod B*Z^d."""


class CountMismatch(ConfigError):
    """Digit and dual-digit sets have different sizes."""


class DomainError(MatradixError):
    """Input is structurally valid but outside an operation's domain."""


class NotFinitelyRepresentable(DomainError):
    """Word does not end in the all-zero period (or 0 is not a digit)."""


class SingularComposition(DomainError):
    """A map composition has no unique fixed point (B^p - I singular)."""


class PeriodNotCompanion(DomainError):
    """Word period is not the digit word of a companion cycle."""


class NoSlotMatch(PeriodNotCompanion):
    """Period's cycle is not an integer translate of the reference cycle."""


class WordTooShort(DomainError):
    """A finite digit word ran out before the requested depth."""


class DegenerateDigitSpan(DomainError):
    """Digit differences span a proper subspace; the modulus-one set is an
    affine cylinder, not a lattice."""

    def __init__(self, message, rank, dim):
        super().__init__(message)
        self.rank = rank
        self.dim = dim


class InvariantSubspacePresent(DomainError):
    """The base matrix has a rational eigenvalue, hence a proper rational
    invariant subspace; the cycle search refuses to certify completeness."""


class UndecidedError(MatradixError):
    """The query could not be decided within the configured limits."""


class MembershipUndecided(UndecidedError):
    """Attractor membership was not settled at the depth limit."""
