from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import List, Optional, Tuple

from sympy import Matrix

from models.errors import DimensionMismatchError

# Coordinates of a lattice vector in the lattice's own basis
LatticeVector = Tuple[int, ...]
IntMatrix = Tuple[Tuple[int, ...], ...]


def _rational_signature(gram: IntMatrix) -> Tuple[int, int, int]:
    """Return (positive, negative, zero) counts by symmetric Gaussian elimination."""
    a: List[List[Fraction]] = [[Fraction(x) for x in row] for row in gram]
    n = len(a)
    pos = neg = 0
    size = n
    while size:
        pivot = next((i for i in range(size) if a[i][i] != 0), None)
        if pivot is None:
            pair = next(
                ((i, j) for i in range(size) for j in range(size) if a[i][j] != 0),
                None,
            )
            if pair is None:
                break
            i, j = pair
            # row_i += row_j, col_i += col_j makes the diagonal 2 a_ij != 0
            for c in range(size):
                a[i][c] += a[j][c]
            for r in range(size):
                a[r][i] += a[r][j]
            pivot = i
        last = size - 1
        a[pivot], a[last] = a[last], a[pivot]
        for row in a[:size]:
            row[pivot], row[last] = row[last], row[pivot]
        p = a[last][last]
        if p > 0:
            pos += 1
        else:
            neg += 1
        for r in range(last):
            factor = a[r][last] / p
            if factor:
                for c in range(last):
                    a[r][c] -= factor * a[last][c]
        size = last
    return pos, neg, n - pos - neg


@dataclass(frozen=True)
class GramLattice:
    """Integral lattice given by a symmetric Gram matrix."""
    gram: IntMatrix
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.gram)
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise DimensionMismatchError(f"Gram matrix must be square, got {n} rows of lengths {[len(r) for r in rows]}")
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise DimensionMismatchError(f"Gram matrix is not symmetric at ({i}, {j})")
        object.__setattr__(self, "gram", rows)

    @property
    def rank(self) -> int:
        return len(self.gram)

    @cached_property
    def determinant(self) -> int:
        if self.rank == 0:
            return 1
        return int(Matrix(self.gram).det(method="bareiss"))

    @cached_property
    def signature(self) -> Tuple[int, int]:
        pos, neg, _ = _rational_signature(self.gram)
        return pos, neg

    @property
    def is_degenerate(self) -> bool:
        return self.determinant == 0

    @property
    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    @property
    def is_positive_definite(self) -> bool:
        return self.signature == (self.rank, 0)

    @property
    def is_negative_definite(self) -> bool:
        return self.signature == (0, self.rank)

    def label(self) -> str:
        return self.name or f"rank {self.rank} lattice, det {self.determinant}"
