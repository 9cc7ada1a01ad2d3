"""Representation numbers of root lattices and the inequalities built from them."""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import pandas as pd

from constants import (
    A1_SYSTEMS_IN_E7,
    ANALYTIC_CONSTANTS,
    E6_SYSTEMS_IN_E8_COMPLEMENT,
    MASS_FORMULA_FACTORS,
    MASS_ORTHOGONAL_GROUP_ORDERS,
    MASS_TOTAL,
)
from models.errors import BudgetExhaustedError, IndefiniteLatticeError, UnknownLatticeError
from services.enumeration import ShortVectorWalker
from services.lattice_core import orthogonal_complement
from services.root_systems import ade_lattice, builtin_gram, enumerate_roots

logger = logging.getLogger(__name__)


@dataclass
class RepNumberTable:
    """counts[n] is the number of vectors of norm 2n; counts[0] = 1."""
    label: str
    max_n: int
    counts: List[int] = field(default_factory=list)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"n": range(len(self.counts)), "count": self.counts})

    def to_csv(self, path: Path) -> None:
        self.to_frame().to_csv(path, index=False)
        logger.info(f"Wrote {self.label} representation numbers up to n={self.max_n} to {path}")


@dataclass(frozen=True)
class InequalityResult:
    n: int
    holds: bool
    e7: int
    e6: int
    d6: int

    @property
    def lhs(self) -> int:
        return 2 * self.e7

    @property
    def rhs(self) -> int:
        return E6_SYSTEMS_IN_E8_COMPLEMENT * self.e6 + A1_SYSTEMS_IN_E7 * self.d6


def _ball_estimate(rank: int, det: int, norm: int) -> float:
    """Volume of the ball of squared radius `norm` divided by sqrt(det)."""
    volume = math.pi ** (rank / 2) / math.gamma(rank / 2 + 1) * norm ** (rank / 2)
    return volume / math.sqrt(det)


def representation_number(label: str, n: int, node_budget: Optional[int] = None) -> int:
    """Number of vectors of norm 2n in the positive-definite lattice named `label`."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    lattice = builtin_gram(label)
    if not lattice.is_positive_definite:
        raise IndefiniteLatticeError(f"{label} is not positive definite")
    if n == 0:
        return 1
    if node_budget is not None:
        estimate = _ball_estimate(lattice.rank, lattice.determinant, 2 * n)
        if estimate > node_budget:
            raise BudgetExhaustedError(f"Shell {2 * n} of {label} holds about {estimate:.0f} vectors, over budget {node_budget}")
    walker = ShortVectorWalker(lattice.gram, node_budget)
    return sum(1 for _ in walker.walk(2 * n, exact=True))


def rep_number_table(label: str, max_n: int, node_budget: Optional[int] = None) -> RepNumberTable:
    counts = [representation_number(label, n, node_budget) for n in range(max_n + 1)]
    return RepNumberTable(label, max_n, counts)


def inequality_check(n: int, node_budget: Optional[int] = None) -> InequalityResult:
    """Whether 2 N_E7(2n) > 28 N_E6(2n) + 63 N_D6(2n)."""
    e7 = representation_number("E7", n, node_budget)
    e6 = representation_number("E6", n, node_budget)
    d6 = representation_number("D6", n, node_budget)
    holds = 2 * e7 > E6_SYSTEMS_IN_E8_COMPLEMENT * e6 + A1_SYSTEMS_IN_E7 * d6
    return InequalityResult(n, holds, e7, e6, d6)


def scan_inequality(max_n: int, node_budget: Optional[int] = None) -> Tuple[Optional[int], List[InequalityResult]]:
    """Check the inequality for n = 1..max_n; returns the first n where it holds."""
    results = []
    first = None
    for n in range(1, max_n + 1):
        result = inequality_check(n, node_budget)
        results.append(result)
        logger.debug(f"n={n}: 2*{result.e7} vs {result.rhs}")
        if result.holds and first is None:
            first = n
    return first, results


def analytic_constants() -> Dict[str, Fraction]:
    return {name: Fraction(value) for name, value in ANALYTIC_CONSTANTS.items()}


def analytic_bound_holds(n: int) -> bool:
    """2 c7 n^(5/2) > (28 c6 + 63 c_d6) n^2, compared after squaring."""
    c = analytic_constants()
    lhs = 2 * c["e7_lower"]
    rhs = E6_SYSTEMS_IN_E8_COMPLEMENT * c["e6_upper"] + A1_SYSTEMS_IN_E7 * c["d6_upper"]
    return n > 0 and lhs * lhs * n > rhs * rhs


def analytic_threshold() -> int:
    """Least n for which the analytic bound holds."""
    c = analytic_constants()
    lhs = 2 * c["e7_lower"]
    rhs = E6_SYSTEMS_IN_E8_COMPLEMENT * c["e6_upper"] + A1_SYSTEMS_IN_E7 * c["d6_upper"]
    n = math.floor(rhs * rhs / (lhs * lhs)) + 1
    assert analytic_bound_holds(n) and not analytic_bound_holds(n - 1)
    return n


@dataclass(frozen=True)
class MassIdentityReport:
    holds: bool
    lhs: Fraction
    rhs: Fraction
    formula: Fraction


def mass_identity_check(group_orders: Sequence[int] = MASS_ORTHOGONAL_GROUP_ORDERS) -> MassIdentityReport:
    """Sum of 1/|O(L)| over the genus against the printed mass and its factorisation."""
    lhs = sum((Fraction(1, order) for order in group_orders), Fraction(0))
    numerator, *denominators = MASS_FORMULA_FACTORS
    formula = Fraction(numerator, math.prod(denominators))
    return MassIdentityReport(lhs == MASS_TOTAL == formula, lhs, MASS_TOTAL, formula)


def a1_pair_count_in_e7() -> int:
    """Number of A1 sublattices of E7, i.e. pairs of opposite roots."""
    return len(enumerate_roots(ade_lattice("E", 7))) // 2


def a1_complement_root_counts(limit: int = 5) -> List[int]:
    """Root counts of the complements of the first few positive roots of E7 (each is D6)."""
    e7 = ade_lattice("E", 7)
    positive = [r for r in enumerate_roots(e7) if next(x for x in r if x) > 0][:limit]
    return [len(enumerate_roots(orthogonal_complement(e7, [r])[0])) for r in positive]


def _signed_vectors(dim: int, total: int, parity: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
    """Integer vectors with sum of squares `total`, all coordinates of one parity when given."""
    coords = [0] * dim

    def fill(i: int, remaining: int) -> Iterator[Tuple[int, ...]]:
        if i == dim - 1:
            root = math.isqrt(remaining)
            if root * root == remaining and (parity is None or root % 2 == parity):
                for value in sorted({root, -root}):
                    coords[i] = value
                    yield tuple(coords)
            return
        bound = math.isqrt(remaining)
        for value in range(-bound, bound + 1):
            if parity is not None and value % 2 != parity:
                continue
            coords[i] = value
            yield from fill(i + 1, remaining - value * value)

    yield from fill(0, total)


def _e8_shell(n: int) -> Iterator[Tuple[int, ...]]:
    """E8 vectors of norm 2n in doubled standard coordinates y = 2x."""
    for parity in (0, 1):
        for y in _signed_vectors(8, 8 * n, parity):
            if sum(y) % 4 == 0:
                yield y


def independent_shell_count(label: str, n: int) -> int:
    """Count norm-2n vectors by scanning coordinates in a standard model of the lattice.

    E7, E6 and D6 are cut out of E8 by x1 = x2, x1 = x2 = x3 and x1 = x2 = 0.
    """
    if n == 0:
        return 1
    if label == "E8":
        return sum(1 for _ in _e8_shell(n))
    if label == "E7":
        return sum(1 for y in _e8_shell(n) if y[0] == y[1])
    if label == "E6":
        return sum(1 for y in _e8_shell(n) if y[0] == y[1] == y[2])
    if label.startswith("D") and label[1:].isdigit():
        rank = int(label[1:])
        return sum(1 for x in _signed_vectors(rank, 2 * n) if sum(x) % 2 == 0)
    if label.startswith("A") and label[1:].isdigit():
        rank = int(label[1:])
        return sum(1 for x in _signed_vectors(rank + 1, 2 * n) if sum(x) == 0)
    raise UnknownLatticeError(f"No coordinate model for {label}")


def e8_count_from_divisor_sum(n: int) -> int:
    """N_E8(2n) = 240 sigma_3(n)."""
    if n == 0:
        return 1
    return 240 * sum(d ** 3 for d in range(1, n + 1) if n % d == 0)
