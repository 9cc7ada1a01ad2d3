"""Exact arithmetic on integral lattices given by Gram matrices."""
import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd, lcm
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from sympy import ZZ, Matrix
from sympy.matrices.normalforms import smith_normal_decomp

from constants import (
    DEFAULT_GROUP_ORDER_BOUND,
    DEFAULT_ISOMETRY_BOUND,
    HIGH_RANK_ISOMETRY_BOUND,
    ISOTROPIC_START_HEIGHT,
    MAX_ISOMETRY_BOX,
    MAX_ISOTROPIC_HEIGHT,
)
from models.discriminant_group import DiscriminantGroup
from models.errors import (
    BoundExceededError,
    DegenerateLatticeError,
    DimensionMismatchError,
    IsotropicVectorError,
    NotPrimitiveError,
    OddLatticeError,
    ZeroVectorError,
)
from models.gram_lattice import GramLattice, IntMatrix, LatticeVector

logger = logging.getLogger(__name__)


def _check_vector(lattice: GramLattice, v: Sequence[int]) -> None:
    if len(v) != lattice.rank:
        raise DimensionMismatchError(f"Vector of length {len(v)} in a rank {lattice.rank} lattice")


def inner(lattice: GramLattice, u: Sequence[int], v: Sequence[int]) -> int:
    """Bilinear form u^T G v."""
    _check_vector(lattice, u)
    _check_vector(lattice, v)
    g = lattice.gram
    return sum(u[i] * g[i][j] * v[j] for i in range(lattice.rank) if u[i] for j in range(lattice.rank))


def norm(lattice: GramLattice, v: Sequence[int]) -> int:
    return inner(lattice, v, v)


def pairing_vector(lattice: GramLattice, v: Sequence[int]) -> LatticeVector:
    """Return G v, the functional x -> x.v in coordinates."""
    _check_vector(lattice, v)
    return tuple(sum(row[j] * v[j] for j in range(lattice.rank)) for row in lattice.gram)


def is_primitive(v: Sequence[int]) -> bool:
    """True when gcd of the coordinates is 1."""
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        raise ZeroVectorError("primitivity of the zero vector is undefined")
    return g == 1


def divisibility(lattice: GramLattice, v: Sequence[int]) -> int:
    """Positive generator of the ideal v.L."""
    if not any(v):
        raise ZeroVectorError("divisibility of the zero vector is undefined")
    g = 0
    for x in pairing_vector(lattice, v):
        g = gcd(g, x)
    return g


def reflective_check(lattice: GramLattice, r: Sequence[int]) -> bool:
    """True when 2 (r.x) / r^2 is integral for every basis vector x, i.e. r^2 divides 2 div(r)."""
    if not is_primitive(r):
        raise NotPrimitiveError(f"{tuple(r)} is not primitive")
    n = norm(lattice, r)
    if n == 0:
        raise IsotropicVectorError(f"{tuple(r)} is isotropic")
    return all((2 * p) % n == 0 for p in pairing_vector(lattice, r))


def reflect(lattice: GramLattice, r: Sequence[int], x: Sequence[int]) -> LatticeVector:
    """Image of x under the reflection in the reflective vector r."""
    n = norm(lattice, r)
    coefficient = Fraction(2 * inner(lattice, x, r), n)
    if coefficient.denominator != 1:
        raise ValueError(f"{tuple(r)} is not reflective for {tuple(x)}")
    return tuple(xi - int(coefficient) * ri for xi, ri in zip(x, r))


def direct_sum(*lattices: GramLattice) -> GramLattice:
    n = sum(lat.rank for lat in lattices)
    rows = [[0] * n for _ in range(n)]
    offset = 0
    for lat in lattices:
        for i in range(lat.rank):
            for j in range(lat.rank):
                rows[offset + i][offset + j] = lat.gram[i][j]
        offset += lat.rank
    names = [lat.name for lat in lattices]
    name = "+".join(names) if all(names) else None
    return GramLattice(tuple(map(tuple, rows)), name)


def rescale(lattice: GramLattice, m: int) -> GramLattice:
    """Lattice L(m) with form multiplied by m; the result must stay even."""
    if m == 0:
        raise DegenerateLatticeError("rescaling by 0 gives a degenerate lattice")
    gram = tuple(tuple(m * x for x in row) for row in lattice.gram)
    if any(gram[i][i] % 2 for i in range(len(gram))):
        raise OddLatticeError(f"{lattice.label()} rescaled by {m} is odd")
    name = f"{lattice.name}({m})" if lattice.name else None
    return GramLattice(gram, name)


def _matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> List[List[int]]:
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def _transpose(a: Sequence[Sequence[int]]) -> List[List[int]]:
    return [list(col) for col in zip(*a)]


def smith_decomposition(rows: Sequence[Sequence[int]]) -> Tuple[List[int], List[List[int]], List[List[int]]]:
    """Smith normal form S A T = D of an integer matrix.

    Returns the diagonal of D (length min(m, n)), S and T. The identity is
    checked on the way out.
    """
    m, n = len(rows), len(rows[0])
    d, s, t = smith_normal_decomp(Matrix(rows), domain=ZZ)
    diag_matrix = [[int(x) for x in row] for row in d.tolist()]
    s_rows = [[int(x) for x in row] for row in s.tolist()]
    t_rows = [[int(x) for x in row] for row in t.tolist()]
    if _matmul(_matmul(s_rows, rows), t_rows) != diag_matrix:
        raise ArithmeticError("Smith normal form decomposition failed verification")
    diagonal = [diag_matrix[i][i] for i in range(min(m, n))]
    # Normalize signs so that the diagonal is non-negative
    for i, value in enumerate(diagonal):
        if value < 0:
            diagonal[i] = -value
            s_rows[i] = [-x for x in s_rows[i]]
    return diagonal, s_rows, t_rows


def discriminant_group(lattice: GramLattice) -> DiscriminantGroup:
    """Discriminant group L^dual/L with its quadratic and bilinear forms."""
    if lattice.is_degenerate:
        raise DegenerateLatticeError(f"{lattice.label()} is degenerate")
    diagonal, _, t = smith_decomposition(lattice.gram)
    n = lattice.rank
    g = lattice.gram
    columns = [[t[r][c] for r in range(n)] for c in range(n)]
    kept = sorted((d, c) for c, d in enumerate(diagonal) if d > 1)
    factors = tuple(d for d, _ in kept)
    generators = tuple(tuple(Fraction(x, d) for x in columns[c]) for d, c in kept)

    def pair(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
        return sum((u[i] * g[i][j] * v[j] for i in range(n) for j in range(n)), Fraction(0))

    q_values = tuple(pair(x, x) % 2 for x in generators)
    bilinear = tuple(tuple(pair(x, y) % 1 for y in generators) for x in generators)
    group = DiscriminantGroup(factors, generators, q_values, bilinear)
    if group.order != abs(lattice.determinant):
        raise ArithmeticError(f"Discriminant order {group.order} differs from |det| {abs(lattice.determinant)}")
    return group


def is_two_elementary(lattice: GramLattice) -> bool:
    return all(d == 2 for d in discriminant_group(lattice).invariant_factors)


def complement_determinant(lattice: GramLattice, v: Sequence[int]) -> Fraction:
    """det of v^perp for a primitive v, computed as det(L) v^2 / div(v)^2."""
    if not is_primitive(v):
        raise NotPrimitiveError(f"{tuple(v)} is not primitive")
    n = norm(lattice, v)
    div = divisibility(lattice, v)
    return Fraction(n * lattice.determinant, div * div)


def orthogonal_complement(
    lattice: GramLattice, vectors: Iterable[Sequence[int]], reduce: bool = True
) -> Tuple[GramLattice, Tuple[LatticeVector, ...]]:
    """Lattice of x with x.v = 0 for all given v, with its basis in L-coordinates.

    Definite complements are LLL-reduced unless reduce is False.
    """
    vs = [tuple(v) for v in vectors]
    if not vs:
        raise ValueError("orthogonal_complement needs at least one vector")
    for v in vs:
        _check_vector(lattice, v)
    rows = [list(pairing_vector(lattice, v)) for v in vs]
    m, n = len(rows), lattice.rank
    diagonal, _, t = smith_decomposition(rows)
    rank = sum(1 for d in diagonal if d != 0)
    if rank < m:
        raise DimensionMismatchError(f"{m} input vectors span only rank {rank}")
    kernel_cols = [j for j in range(n) if j >= m or diagonal[j] == 0]
    basis = [tuple(t[r][j] for r in range(n)) for j in kernel_cols]
    gram = tuple(tuple(inner(lattice, a, b) for b in basis) for a in basis)
    complement = GramLattice(gram)
    if reduce and complement.rank and (complement.is_positive_definite or complement.is_negative_definite):
        from services.enumeration import lll_reduce

        sign = 1 if complement.is_positive_definite else -1
        positive = [[sign * x for x in row] for row in gram]
        _, transform = lll_reduce(positive)
        basis = [
            tuple(sum(transform[i][j] * basis[i][r] for i in range(len(basis))) for r in range(n))
            for j in range(len(basis))
        ]
        complement = GramLattice(tuple(tuple(inner(lattice, a, b) for b in basis) for a in basis))
    logger.debug(f"Complement of {len(vs)} vectors in {lattice.label()}: rank {complement.rank}")
    return complement, tuple(basis)


def _element_order(element: Sequence[int], factors: Sequence[int]) -> int:
    order = 1
    for a, d in zip(element, factors):
        order = lcm(order, d // gcd(a, d))
    return order


def discriminant_forms_match(
    left: GramLattice,
    right: GramLattice,
    sign_flip: bool = False,
    order_bound: int = DEFAULT_GROUP_ORDER_BOUND,
) -> bool:
    """True when (A_left, q_left) is isometric to (A_right, +-q_right).

    With sign_flip the target form is -q_right. Groups with different
    invariant factors are never isometric.
    """
    a = discriminant_group(left)
    b = discriminant_group(right)
    if a.invariant_factors != b.invariant_factors:
        return False
    if a.order > order_bound:
        raise BoundExceededError(f"Discriminant group of order {a.order} exceeds bound {order_bound}")
    sign = -1 if sign_flip else 1
    candidates: List[List[Tuple[int, ...]]] = []
    for i, d in enumerate(a.invariant_factors):
        wanted = (sign * a.q_values[i]) % 2
        candidates.append([
            h for h in b.elements()
            if d % _element_order(h, b.invariant_factors) == 0 and b.q(h) == wanted
        ])

    chosen: List[Tuple[int, ...]] = []

    def image(coeffs: Tuple[int, ...]) -> Tuple[int, ...]:
        return tuple(
            sum(c * h[j] for c, h in zip(coeffs, chosen)) % b.invariant_factors[j]
            for j in range(b.length)
        )

    def extend(i: int) -> bool:
        if i == a.length:
            images = {image(x) for x in a.elements()}
            return len(images) == a.order
        for h in candidates[i]:
            if all(b.b(chosen[j], h) == (sign * a.bilinear[j][i]) % 1 for j in range(i)):
                chosen.append(h)
                if extend(i + 1):
                    return True
                chosen.pop()
        return False

    return extend(0)


def has_nontrivial_overlattice(lattice: GramLattice, order_bound: int = 10 ** 6) -> bool:
    """True when A_L has a nonzero element x with q(x) = 0 mod 2.

    Such an element generates an isotropic subgroup and hence an even
    overlattice of finite index.
    """
    if not lattice.is_even:
        raise OddLatticeError(f"{lattice.label()} is not even")
    group = discriminant_group(lattice)
    if group.order > order_bound:
        raise BoundExceededError(f"Discriminant group of order {group.order} exceeds bound {order_bound}")
    return any(any(x) and group.q(x) == 0 for x in group.elements())


@dataclass(frozen=True)
class IsometryOutcome:
    """Result of an isometry search; matrix columns are images of the basis of the second lattice."""
    matrix: Optional[IntMatrix]
    reason: str
    bound: int

    @property
    def found(self) -> bool:
        return self.matrix is not None


def invariant_mismatch(left: GramLattice, right: GramLattice) -> Optional[str]:
    """Name of the first invariant that proves two lattices non-isometric."""
    if left.rank != right.rank:
        return "rank"
    if left.determinant != right.determinant:
        return "determinant"
    if left.signature != right.signature:
        return "signature"
    if left.is_even != right.is_even:
        return "parity"
    return None


def default_isometry_bound(rank: int) -> int:
    return DEFAULT_ISOMETRY_BOUND if rank <= 3 else HIGH_RANK_ISOMETRY_BOUND


def find_isometry(left: GramLattice, right: GramLattice, coeff_bound: Optional[int] = None) -> IsometryOutcome:
    """Search for B with B^T G_left B = G_right and det B = +-1 over a coordinate box."""
    bound = coeff_bound if coeff_bound is not None else default_isometry_bound(left.rank)
    mismatch = invariant_mismatch(left, right)
    if mismatch:
        logger.info(f"Lattices differ in {mismatch}, not isometric")
        return IsometryOutcome(None, f"invariant mismatch: {mismatch}", bound)
    n = left.rank
    if n == 0:
        return IsometryOutcome((), "found", bound)
    if (2 * bound + 1) ** n > MAX_ISOMETRY_BOX:
        raise BoundExceededError(f"Box of radius {bound} in rank {n} exceeds {MAX_ISOMETRY_BOX} vectors")

    g1 = np.array(left.gram, dtype=np.int64)
    g2 = right.gram
    box = np.array(list(product(range(-bound, bound + 1), repeat=n)), dtype=np.int64)
    box_g = box @ g1
    norms = np.einsum("ij,ij->i", box_g, box)
    candidates = {j: np.nonzero(norms == g2[j][j])[0] for j in range(n)}
    order = sorted(range(n), key=lambda j: len(candidates[j]))
    images: dict = {}

    def verified() -> Optional[IntMatrix]:
        columns = [tuple(int(x) for x in box[images[j]]) for j in range(n)]
        matrix = [[columns[j][i] for j in range(n)] for i in range(n)]
        if not _is_isometry(left, right, matrix):
            return None
        return tuple(tuple(row) for row in matrix)

    def extend(pos: int) -> Optional[IntMatrix]:
        if pos == n:
            return verified()
        j = order[pos]
        pool = candidates[j]
        for prev in order[:pos]:
            if not len(pool):
                return None
            pool = pool[box_g[pool] @ box[images[prev]] == g2[j][prev]]
        for idx in pool:
            images[j] = int(idx)
            found = extend(pos + 1)
            if found is not None:
                return found
        images.pop(j, None)
        return None

    matrix = extend(0)
    if matrix is None:
        logger.info(f"No isometry within coefficient bound {bound}")
        return IsometryOutcome(None, f"not found within bound {bound}", bound)
    return IsometryOutcome(matrix, "found", bound)


def isometry_search(left: GramLattice, right: GramLattice, coeff_bound: Optional[int] = None) -> Optional[IntMatrix]:
    return find_isometry(left, right, coeff_bound).matrix


def _is_isometry(left: GramLattice, right: GramLattice, matrix: Sequence[Sequence[int]]) -> bool:
    if _matmul(_matmul(_transpose(matrix), left.gram), matrix) != [list(r) for r in right.gram]:
        return False
    return abs(int(Matrix(matrix).det())) == 1


def isotropic_vectors(lattice: GramLattice, height: int) -> List[LatticeVector]:
    """Primitive isotropic vectors whose coordinates other than one solved coordinate lie in [-height, height].

    The solved coordinate is the first basis vector of nonzero norm; x^2 = 0 is
    a quadratic equation in it. Results are sorted by height, then coordinates.
    """
    n = lattice.rank
    g = np.array(lattice.gram, dtype=np.int64)
    j = next((i for i in range(n) if lattice.gram[i][i]), 0)
    others = [i for i in range(n) if i != j]
    box = np.array(list(product(range(-height, height + 1), repeat=n - 1)), dtype=np.int64)
    linear = box @ g[others, j]
    constant = np.einsum("ij,ij->i", box @ g[np.ix_(others, others)], box)
    a = lattice.gram[j][j]
    solutions = []
    if a:
        # a c^2 + 2 linear c + constant = 0
        disc = linear * linear - a * constant
        root = np.rint(np.sqrt(np.clip(disc, 0, None))).astype(np.int64)
        square = (disc >= 0) & (root * root == disc)
        for sign in (1, -1):
            numerator = -linear + sign * root
            ok = square & (numerator % a == 0)
            solutions.append((box[ok], numerator[ok] // a))
    else:
        ok = (linear != 0) & (constant % (2 * np.where(linear == 0, 1, linear)) == 0)
        solutions.append((box[ok], -constant[ok] // (2 * linear[ok])))
        free = (linear == 0) & (constant == 0)
        solutions.append((box[free], np.zeros(int(free.sum()), dtype=np.int64)))
    found = set()
    for rows, c in solutions:
        for row, value in zip(rows.tolist(), c.tolist()):
            v = row[:j] + [value] + row[j:]
            if any(v) and gcd(*v) == 1:
                found.add(tuple(v))
    return sorted(found, key=lambda v: (max(abs(x) for x in v), v))


def split_hyperbolic_plane(lattice: GramLattice, height: int) -> Optional[Tuple[LatticeVector, LatticeVector]]:
    """Vectors e, f with e^2 = f^2 = 0 and e.f = 1, from an isotropic e of divisibility 1."""
    for e in isotropic_vectors(lattice, height):
        if divisibility(lattice, e) != 1:
            continue
        _, s, t = smith_decomposition([list(pairing_vector(lattice, e))])
        x = tuple(s[0][0] * t[r][0] for r in range(lattice.rank))
        if inner(lattice, e, x) != 1:
            raise ArithmeticError(f"Smith form gave e.x = {inner(lattice, e, x)} for e = {e}")
        shift = norm(lattice, x) // 2
        f = tuple(xi - shift * ei for xi, ei in zip(x, e))
        return e, f
    return None


def has_hyperbolic_block(lattice: GramLattice) -> bool:
    """True when the first two basis vectors span U and are orthogonal to the rest."""
    g = lattice.gram
    if lattice.rank < 2 or (g[0][0], g[0][1], g[1][1]) != (0, 1, 0):
        return False
    return all(g[0][j] == 0 and g[1][j] == 0 for j in range(2, lattice.rank))


def find_isometry_by_hyperbolic_split(
    left: GramLattice, right: GramLattice, max_height: int = MAX_ISOTROPIC_HEIGHT
) -> IsometryOutcome:
    """Isometry onto right = U + N through a copy of U split off from left.

    A unimodular U in left is an orthogonal summand, so only its complement
    has to be matched with N. Heights double from ISOTROPIC_START_HEIGHT up
    to max_height.
    """
    if not has_hyperbolic_block(right):
        raise ValueError(f"{right.label()} does not start with a hyperbolic plane")
    mismatch = invariant_mismatch(left, right)
    if mismatch:
        logger.info(f"Lattices differ in {mismatch}, not isometric")
        return IsometryOutcome(None, f"invariant mismatch: {mismatch}", max_height)
    height = min(ISOTROPIC_START_HEIGHT, max_height)
    split = split_hyperbolic_plane(left, height)
    while split is None and height < max_height:
        height = min(2 * height, max_height)
        split = split_hyperbolic_plane(left, height)
    if split is None:
        logger.info(f"No isotropic vector of divisibility 1 within height {max_height}")
        return IsometryOutcome(None, f"no hyperbolic plane within height {max_height}", max_height)
    e, f = split
    n = left.rank
    columns = [e, f]
    if n > 2:
        complement, basis = orthogonal_complement(left, [e, f])
        rest = GramLattice(tuple(row[2:] for row in right.gram[2:]))
        outcome = find_isometry(complement, rest)
        if outcome.matrix is None:
            return IsometryOutcome(None, f"complement of the hyperbolic plane: {outcome.reason}", height)
        for c in range(n - 2):
            columns.append(tuple(
                sum(outcome.matrix[i][c] * basis[i][r] for i in range(n - 2)) for r in range(n)
            ))
    matrix = [[columns[c][r] for c in range(n)] for r in range(n)]
    if not _is_isometry(left, right, matrix):
        raise ArithmeticError(f"Hyperbolic split of {left.label()} failed verification")
    logger.debug(f"Hyperbolic plane split off {left.label()} at height {height}")
    return IsometryOutcome(tuple(tuple(row) for row in matrix), "found", height)


def minus_one_sigma_condition(lattice: GramLattice, r: Sequence[int], k: int) -> bool:
    """True when r is reflective and r^2 = +-2, or r^2 = +-2k with div(r) in {k, 2k}.

    For a lattice with discriminant group Z/2k these are the reflective vectors
    whose reflection acts as -1 on the discriminant group.
    """
    if not reflective_check(lattice, r):
        return False
    n = abs(norm(lattice, r))
    if n == 2:
        return True
    return n == 2 * k and divisibility(lattice, r) in (k, 2 * k)
