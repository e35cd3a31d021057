"""Custom exceptions for paraprod."""


class ParaprodError(Exception):
    """Base exception for paraprod errors."""
    pass


class DomainError(ParaprodError, ValueError):
    """Raised when an argument lies outside the domain of an operation."""
    pass


class LiteralError(ParaprodError, ValueError):
    """Raised when a series, weight or operator literal cannot be parsed."""
    pass


class GuardError(ParaprodError):
    """Base class for the hard limits that stop runaway computations."""
    pass


class DegreeOverflowError(GuardError):
    """Raised when an exact-mode result exceeds the configured degree limit."""
    pass


class TermExplosionError(GuardError):
    """Raised when a rewrite produces more intermediate terms than allowed."""
    pass


class WeightError(ParaprodError):
    """Base class for radial weight errors."""
    pass


class UnknownWeightKindError(WeightError, ValueError):
    """Raised when a weight descriptor names an unsupported kind."""
    pass


class InsufficientTabulationError(WeightError):
    """Raised when a tabulated weight does not reach far enough towards r = 1."""
    pass


class WrongWeightKindError(WeightError):
    """Raised when an operation requires a different kind of weight."""
    pass


class NotUpperDoublingError(WeightError):
    """Raised when a weight fails the upper doubling test on the grid."""
    pass


class QuadratureError(ParaprodError):
    """Raised when a quadrature cannot produce a usable estimate."""
    pass


class AlgebraError(ParaprodError):
    """Base class for word algebra errors."""
    pass


class ShapeError(AlgebraError):
    """Raised when an operator does not have the shape an operation requires."""
    pass


class SingularBasisError(AlgebraError):
    """Raised when a rebasing basis is not triangular."""
    pass


class LabError(ParaprodError):
    """Base class for operator-norm experiment errors."""
    pass


class DegenerateFamilyError(LabError):
    """Raised when every member of a test family is degenerate."""
    pass


class ZeroNormWitnessError(LabError):
    """Raised when a test function has zero norm."""
    pass
