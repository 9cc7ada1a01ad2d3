"""Exception hierarchy for lattice computations.

Every error is a ValueError so callers that only care about bad input can
catch the builtin type.
"""


class LatticeError(ValueError):
    """Base class for lattice computation errors."""


class DimensionMismatchError(LatticeError):
    """Vector or matrix dimensions disagree with the lattice rank."""


class ZeroVectorError(LatticeError):
    """A nonzero vector was required."""


class DegenerateLatticeError(LatticeError):
    """The Gram matrix is singular where a nondegenerate one is required."""


class NotPrimitiveError(LatticeError):
    """The vector is divisible in the lattice."""


class IsotropicVectorError(LatticeError):
    """The vector has norm zero where a non-isotropic one is required."""


class IndefiniteLatticeError(LatticeError):
    """A definite lattice was required."""


class BoundExceededError(LatticeError):
    """A search would exceed its configured size bound."""


class UnknownLatticeError(LatticeError):
    """A lattice name could not be parsed."""


class NotADEClassifiableError(LatticeError):
    """A subdiagram contains an affine or hyperbolic component."""


class BudgetExhaustedError(LatticeError):
    """An enumeration visited more nodes than its budget allows."""

    def __init__(self, message: str, nodes_visited: int = 0):
        super().__init__(message)
        self.nodes_visited = nodes_visited


class DataIntegrityError(LatticeError):
    """Stored data contradicts itself or the built-in tables."""


class NonUnimodularError(LatticeError):
    """The Gram matrix does not have determinant +1 or -1."""


class OddLatticeError(LatticeError):
    """An even lattice was required."""
