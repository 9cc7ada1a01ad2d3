from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import prod
from typing import Iterator, Tuple


@dataclass(frozen=True)
class DiscriminantGroup:
    """Finite quadratic form on L^dual / L in Smith-normal-form coordinates.

    Elements are written as tuples a with 0 <= a_i < invariant_factors[i];
    q_values are taken mod 2 in [0, 2), bilinear values mod 1 in [0, 1).
    """
    invariant_factors: Tuple[int, ...]
    generators: Tuple[Tuple[Fraction, ...], ...]
    q_values: Tuple[Fraction, ...]
    bilinear: Tuple[Tuple[Fraction, ...], ...]

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def length(self) -> int:
        return len(self.invariant_factors)

    def elements(self) -> Iterator[Tuple[int, ...]]:
        return product(*(range(d) for d in self.invariant_factors))

    def q(self, element: Tuple[int, ...]) -> Fraction:
        total = Fraction(0)
        for i, a in enumerate(element):
            if not a:
                continue
            total += a * a * self.q_values[i]
            for j in range(i + 1, len(element)):
                total += 2 * a * element[j] * self.bilinear[i][j]
        return total % 2

    def b(self, left: Tuple[int, ...], right: Tuple[int, ...]) -> Fraction:
        total = Fraction(0)
        for i, a in enumerate(left):
            for j, c in enumerate(right):
                total += a * c * self.bilinear[i][j]
        return total % 1
