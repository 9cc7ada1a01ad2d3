"""Exact short-vector enumeration and LLL reduction for positive-definite Gram matrices.

All arithmetic is done with Fractions so that shell membership is decided
exactly; there is no floating point anywhere in this module.
"""
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple

from models.errors import BudgetExhaustedError, IndefiniteLatticeError
from models.gram_lattice import IntMatrix, LatticeVector

logger = logging.getLogger(__name__)

LLL_DELTA = Fraction(3, 4)


def _round_nearest(x: Fraction) -> int:
    return math.floor(x + Fraction(1, 2))


def lll_reduce(gram: Sequence[Sequence[int]], delta: Fraction = LLL_DELTA) -> Tuple[IntMatrix, IntMatrix]:
    """
    LLL-reduce a positive-definite Gram matrix.

    Args:
        gram: symmetric positive-definite integer matrix.
        delta: Lovasz constant, 1/4 < delta <= 1.

    Returns:
        (reduced_gram, transform) where column j of transform holds the
        coordinates of the j-th reduced basis vector in the original basis,
        so reduced_gram = transform^T gram transform.
    """
    n = len(gram)
    h = [[int(x) for x in row] for row in gram]
    basis = [[int(i == j) for j in range(n)] for i in range(n)]

    def gso() -> Tuple[List[List[Fraction]], List[Fraction]]:
        mu = [[Fraction(0)] * n for _ in range(n)]
        bstar = [Fraction(0)] * n
        for i in range(n):
            for j in range(i):
                s = Fraction(h[i][j]) - sum((mu[j][l] * mu[i][l] * bstar[l] for l in range(j)), Fraction(0))
                mu[i][j] = s / bstar[j]
            bstar[i] = h[i][i] - sum((mu[i][l] ** 2 * bstar[l] for l in range(i)), Fraction(0))
            if bstar[i] <= 0:
                raise IndefiniteLatticeError("LLL needs a positive-definite Gram matrix")
        return mu, bstar

    def subtract(k: int, j: int, r: int) -> None:
        basis[k] = [a - r * b for a, b in zip(basis[k], basis[j])]
        for c in range(n):
            h[k][c] -= r * h[j][c]
        for c in range(n):
            h[c][k] -= r * h[c][j]

    def swap(k: int) -> None:
        basis[k], basis[k - 1] = basis[k - 1], basis[k]
        h[k], h[k - 1] = h[k - 1], h[k]
        for row in h:
            row[k], row[k - 1] = row[k - 1], row[k]

    if n:
        gso()
    k = 1
    swaps = 0
    while k < n:
        mu, bstar = gso()
        for j in range(k - 1, -1, -1):
            r = _round_nearest(mu[k][j])
            if r:
                subtract(k, j, r)
                for l in range(j):
                    mu[k][l] -= r * mu[j][l]
                mu[k][j] -= r
        if bstar[k] >= (delta - mu[k][k - 1] ** 2) * bstar[k - 1]:
            k += 1
        else:
            swap(k)
            swaps += 1
            k = max(k - 1, 1)
    logger.debug(f"LLL finished on rank {n} after {swaps} swaps")
    transform = tuple(tuple(basis[j][i] for j in range(n)) for i in range(n))
    return tuple(tuple(row) for row in h), transform


def quadratic_completion(gram: Sequence[Sequence[int]]) -> Tuple[List[Fraction], List[List[Fraction]]]:
    """Write Q(x) = sum_i q_i (x_i + sum_{j>i} mu_ij x_j)^2 exactly.

    Raises IndefiniteLatticeError when some q_i is not positive.
    """
    n = len(gram)
    q = [[Fraction(x) for x in row] for row in gram]
    for i in range(n):
        if q[i][i] <= 0:
            raise IndefiniteLatticeError("Gram matrix is not positive definite")
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    diag = [q[i][i] for i in range(n)]
    mu = [[q[i][j] if j > i else Fraction(0) for j in range(n)] for i in range(n)]
    return diag, mu


def _integer_window(center: Fraction, radius_sq: Fraction) -> Tuple[int, int]:
    """Integers x with (x - center)^2 <= radius_sq, as an inclusive range."""
    if radius_sq < 0:
        return 1, 0
    root = Fraction(math.isqrt(radius_sq.numerator * radius_sq.denominator), radius_sq.denominator)
    hi = math.floor(center + root) + 1
    if (hi - center) ** 2 > radius_sq:
        hi -= 1
    lo = math.ceil(center - root) - 1
    if (center - lo) ** 2 > radius_sq:
        lo += 1
    return lo, hi


def _rational_sqrt(x: Fraction) -> Optional[Fraction]:
    if x < 0:
        return None
    num, den = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if num * num != x.numerator or den * den != x.denominator:
        return None
    return Fraction(num, den)


class ShortVectorWalker:
    """Depth-first Fincke-Pohst walk with the last coordinate outermost."""

    def __init__(self, gram: Sequence[Sequence[int]], node_budget: Optional[int] = None):
        self.rank = len(gram)
        self.diag, self.mu = quadratic_completion(gram)
        self.node_budget = node_budget
        self.nodes_visited = 0

    def _tick(self) -> None:
        self.nodes_visited += 1
        if self.node_budget is not None and self.nodes_visited > self.node_budget:
            raise BudgetExhaustedError(
                f"Enumeration exceeded node budget {self.node_budget}", self.nodes_visited
            )

    def _center(self, i: int, x: List[int]) -> Fraction:
        row = self.mu[i]
        return -sum((row[j] * x[j] for j in range(i + 1, self.rank) if x[j]), Fraction(0))

    def top_window(self, bound: int) -> Tuple[int, int]:
        return _integer_window(Fraction(0), Fraction(bound) / self.diag[-1])

    def walk(
        self, bound: int, exact: bool = False, top_values: Optional[Sequence[int]] = None
    ) -> Iterator[Tuple[LatticeVector, int]]:
        """Yield (x, Q(x)) for nonzero x with Q(x) <= bound, or Q(x) == bound when exact."""
        n = self.rank
        if n == 0:
            return
        x = [0] * n
        target = Fraction(bound)

        def level(i: int, remaining: Fraction) -> Iterator[Tuple[LatticeVector, int]]:
            center = self._center(i, x)
            if i == 0 and exact:
                s = _rational_sqrt(remaining / self.diag[0])
                if s is None:
                    return
                for root in sorted({center - s, center + s}):
                    if root.denominator == 1:
                        self._tick()
                        x[0] = int(root)
                        if any(x):
                            yield tuple(x), bound
                x[0] = 0
                return
            if i == n - 1 and top_values is not None:
                values: Sequence[int] = top_values
            else:
                lo, hi = _integer_window(center, remaining / self.diag[i])
                values = range(lo, hi + 1)
            for v in values:
                self._tick()
                x[i] = v
                t = v - center
                rest = remaining - self.diag[i] * t * t
                if rest < 0:
                    continue
                if i == 0:
                    if any(x):
                        yield tuple(x), int(target - rest)
                else:
                    yield from level(i - 1, rest)
            x[i] = 0

        yield from level(n - 1, target)


def iter_short_vectors(
    gram: Sequence[Sequence[int]], max_norm: int, node_budget: Optional[int] = None
) -> Iterator[Tuple[LatticeVector, int]]:
    """All nonzero x with Q(x) <= max_norm, with their norms."""
    return ShortVectorWalker(gram, node_budget).walk(max_norm)


def iter_shell(
    gram: Sequence[Sequence[int]], norm: int, node_budget: Optional[int] = None
) -> Iterator[LatticeVector]:
    """All x with Q(x) == norm; the innermost coordinate is solved directly."""
    for x, _ in ShortVectorWalker(gram, node_budget).walk(norm, exact=True):
        yield x


def _count_slice(task: Tuple[Tuple[Tuple[int, ...], ...], int, Tuple[int, ...], Optional[int]]) -> Tuple[int, int]:
    gram, norm, values, budget = task
    walker = ShortVectorWalker(gram, budget)
    count = sum(1 for _ in walker.walk(norm, exact=True, top_values=values))
    return count, walker.nodes_visited


def count_shell(
    gram: Sequence[Sequence[int]], norm: int, node_budget: Optional[int] = None, workers: int = 1
) -> int:
    """Number of lattice vectors of norm exactly `norm`; norm 0 counts the zero vector."""
    if norm == 0:
        return 1
    if norm < 0:
        return 0
    walker = ShortVectorWalker(gram, node_budget)
    if workers <= 1 or walker.rank < 2:
        return sum(1 for _ in walker.walk(norm, exact=True))
    frozen = tuple(tuple(int(v) for v in row) for row in gram)
    lo, hi = walker.top_window(norm)
    values = list(range(lo, hi + 1))
    slices = [tuple(values[i::workers]) for i in range(workers) if values[i::workers]]
    tasks = [(frozen, norm, s, node_budget) for s in slices]
    with ProcessPoolExecutor(max_workers=workers) as executor:
        results = list(executor.map(_count_slice, tasks))
    logger.debug(f"Shell {norm} counted over {len(tasks)} slices, {sum(r[1] for r in results)} nodes")
    return sum(r[0] for r in results)
