import math
import random
from fractions import Fraction
import itertools

import pytest

from models.errors import (
    DegenerateLatticeError,
    DimensionMismatchError,
    IsotropicVectorError,
    NotPrimitiveError,
    OddLatticeError,
    ZeroVectorError,
)
from models.gram_lattice import GramLattice
from services.lattice_core import (
    complement_determinant,
    direct_sum,
    discriminant_forms_match,
    discriminant_group,
    divisibility,
    find_isometry,
    find_isometry_by_hyperbolic_split,
    has_hyperbolic_block,
    has_nontrivial_overlattice,
    inner,
    is_primitive,
    is_two_elementary,
    isometry_search,
    isotropic_vectors,
    minus_one_sigma_condition,
    norm,
    orthogonal_complement,
    reflect,
    reflective_check,
    rescale,
    smith_decomposition,
    split_hyperbolic_plane,
)
from services.root_systems import ade_lattice, builtin_gram, e10_lattice
from services.nef_search import e10_dual_basis


def test_u_plus_e8_invariants():
    lattice = builtin_gram("U+E8(-1)")
    assert lattice.rank == 10
    assert lattice.determinant == -1
    assert lattice.signature == (1, 9)
    assert lattice.is_even


def test_e10_diagram_is_u_plus_e8():
    lattice = e10_lattice()
    assert lattice.determinant == -1
    assert lattice.signature == (1, 9)


def test_degenerate_lattice_is_flagged():
    lattice = GramLattice(((2, 2), (2, 2)))
    assert lattice.is_degenerate
    assert lattice.signature == (1, 0)
    with pytest.raises(DegenerateLatticeError):
        discriminant_group(lattice)


def test_non_symmetric_gram_rejected():
    with pytest.raises(DimensionMismatchError):
        GramLattice(((2, 1), (0, 2)))


def test_inner_and_norm():
    e8 = ade_lattice("E", 8)
    root = (1, 0, 0, 0, 0, 0, 0, 0)
    assert norm(e8, root) == 2
    assert inner(e8, root, (0, 0, 1, 0, 0, 0, 0, 0)) == -1
    with pytest.raises(DimensionMismatchError):
        inner(e8, root, (1, 0))


def test_divisibility():
    lattice = builtin_gram("U+<-10>")
    assert divisibility(lattice, (0, 0, 1)) == 10
    assert divisibility(lattice, (1, 1, 1)) == 1
    assert divisibility(lattice, (0, 0, 3)) == 30
    with pytest.raises(ZeroVectorError):
        divisibility(lattice, (0, 0, 0))


def test_is_primitive():
    assert is_primitive((2, 3))
    assert not is_primitive((2, 4, 6))
    with pytest.raises(ZeroVectorError):
        is_primitive((0, 0))


def test_reflective_vectors():
    lattice = builtin_gram("U+<-10>")
    assert reflective_check(lattice, (0, 0, 1))
    assert reflective_check(lattice, (1, -1, 0))
    assert not reflective_check(lattice, (1, 2, 0))
    assert reflect(lattice, (1, -1, 0), (1, 0, 0)) == (0, 1, 0)


def test_minus_one_sigma_condition():
    lattice = builtin_gram("U+<-10>")
    assert minus_one_sigma_condition(lattice, (0, 0, 1), 5)
    assert minus_one_sigma_condition(lattice, (1, -1, 0), 5)
    assert not minus_one_sigma_condition(lattice, (1, 2, 0), 5)


def test_reflective_check_needs_primitive_anisotropic_vector():
    lattice = builtin_gram("U+<-10>")
    with pytest.raises(NotPrimitiveError):
        reflective_check(lattice, (0, 0, 2))
    with pytest.raises(IsotropicVectorError):
        reflective_check(lattice, (1, 0, 0))
    with pytest.raises(IsotropicVectorError):
        minus_one_sigma_condition(lattice, (1, 0, 0), 5)


def test_reflective_vectors_satisfy_divisibility_chain():
    lattice = builtin_gram("U+<-10>+A2(-1)")
    reflective = 0
    for r in itertools.product(range(-3, 4), repeat=lattice.rank):
        if not any(r) or not is_primitive(r) or norm(lattice, r) == 0:
            continue
        if reflective_check(lattice, r):
            reflective += 1
            n, div = norm(lattice, r), divisibility(lattice, r)
            assert n % div == 0
            assert (2 * div) % n == 0
    assert reflective > 200


def test_rescale_and_direct_sum():
    a1 = ade_lattice("A", 1)
    assert rescale(a1, -1).gram == ((-2,),)
    with pytest.raises(OddLatticeError):
        rescale(GramLattice(((1,),)), 1)
    with pytest.raises(DegenerateLatticeError):
        rescale(a1, 0)
    total = direct_sum(a1, ade_lattice("E", 8))
    assert total.rank == 9
    assert total.determinant == 2


def test_smith_decomposition_of_d4():
    diagonal, _, _ = smith_decomposition(ade_lattice("D", 4).gram)
    assert sorted(diagonal) == [1, 1, 2, 2]


def test_discriminant_group_of_a2():
    group = discriminant_group(ade_lattice("A", 2))
    assert group.invariant_factors == (3,)
    assert group.q_values == (Fraction(2, 3),)


def test_discriminant_group_of_d4_and_e8():
    d4 = discriminant_group(ade_lattice("D", 4))
    assert d4.invariant_factors == (2, 2)
    assert all(d4.q(x) == 1 for x in d4.elements() if any(x))
    assert discriminant_group(ade_lattice("E", 8)).order == 1


def test_discriminant_group_of_rank_one():
    group = discriminant_group(builtin_gram("U+<-10>"))
    assert group.invariant_factors == (10,)
    assert group.q_values[0] in (Fraction(19, 10), Fraction(11, 10))


def test_discriminant_order_matches_determinant():
    lattice = GramLattice(((4, 1, 1), (1, -2, 0), (1, 0, -2)))
    assert lattice.determinant == 20
    assert discriminant_group(lattice).order == 20


def test_discriminant_order_on_random_lattices():
    rng = random.Random(200)
    checked = 0
    while checked < 200:
        n = rng.randint(1, 4)
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                rows[i][j] = rows[j][i] = rng.randint(-6, 6)
        lattice = GramLattice(tuple(map(tuple, rows)))
        if lattice.determinant == 0:
            continue
        group = discriminant_group(lattice)
        assert group.order == abs(lattice.determinant)
        assert math.prod(group.invariant_factors) == abs(lattice.determinant)
        checked += 1


@pytest.mark.parametrize("k, c", [(2, 1), (10, 3)])
def test_complement_of_reflective_vector_in_polarized_lattice(k, c):
    # r = k (e - f) + c h with h^2 = 2k and k = 1 + c^2, so r^2 = -2k and div(r) = k
    lattice = builtin_gram(f"U+2E8(-1)+<{2 * k}>")
    r = (k, -k) + (0,) * 16 + (c,)
    assert norm(lattice, r) == -2 * k
    assert divisibility(lattice, r) == k
    assert reflective_check(lattice, r)
    assert minus_one_sigma_condition(lattice, r, k)
    complement, _ = orthogonal_complement(lattice, [r])
    assert complement.rank == 18
    assert abs(complement.determinant) == 4
    assert complement.signature == (2, 16)
    assert is_two_elementary(complement)


def test_two_elementary():
    assert is_two_elementary(builtin_gram("2A1(-1)"))
    assert is_two_elementary(builtin_gram("D10(-1)"))
    assert is_two_elementary(builtin_gram("E8(-1)+2A1(-1)"))
    assert not is_two_elementary(ade_lattice("A", 2))


def test_discriminant_forms_match():
    assert discriminant_forms_match(builtin_gram("2A1(-1)"), builtin_gram("D10(-1)"))
    assert discriminant_forms_match(builtin_gram("E8(-1)+2A1(-1)"), builtin_gram("D10(-1)"))
    assert not discriminant_forms_match(builtin_gram("<2>"), builtin_gram("<-2>"))
    assert discriminant_forms_match(builtin_gram("<2>"), builtin_gram("<-2>"), sign_flip=True)
    assert not discriminant_forms_match(ade_lattice("A", 2), builtin_gram("2A1"))


def test_orthogonal_complement_of_e8_root():
    e8 = ade_lattice("E", 8)
    complement, basis = orthogonal_complement(e8, [(1, 0, 0, 0, 0, 0, 0, 0)])
    assert complement.rank == 7
    assert complement.determinant == 2
    for b in basis:
        assert inner(e8, b, (1, 0, 0, 0, 0, 0, 0, 0)) == 0


def test_orthogonal_complement_rejects_dependent_input():
    e8 = ade_lattice("E", 8)
    r = (1, 0, 0, 0, 0, 0, 0, 0)
    with pytest.raises(DimensionMismatchError):
        orthogonal_complement(e8, [r, tuple(2 * x for x in r)])


def test_complement_determinant_matches_complement():
    lattice = e10_lattice()
    basis = e10_dual_basis()
    for index in (1, 2, 7):
        c = basis.vectors[index]
        complement, _ = orthogonal_complement(lattice, [c])
        assert complement_determinant(lattice, c) == complement.determinant
    assert complement_determinant(ade_lattice("E", 8), (1, 0, 0, 0, 0, 0, 0, 0)) == 2


def test_isometry_search_finds_catalog_matrix():
    left = GramLattice(((2, 1, 0), (1, -2, 0), (0, 0, -2)))
    right = builtin_gram("U+<-10>")
    matrix = isometry_search(left, right, 12)
    assert matrix is not None
    n = 3
    product = [[sum(matrix[a][i] * left.gram[a][b] * matrix[b][j] for a in range(n) for b in range(n)) for j in range(n)] for i in range(n)]
    assert product == [list(r) for r in right.gram]


def test_isometry_search_parity_mismatch():
    outcome = find_isometry(builtin_gram("<2>+<2>"), builtin_gram("<4>+<1>"))
    assert not outcome.found
    assert "parity" in outcome.reason


def test_overlattices():
    assert not has_nontrivial_overlattice(builtin_gram("U+<-10>"))
    assert has_nontrivial_overlattice(builtin_gram("U+<-8>"))


def test_square_free_targets_are_overlattice_free():
    for k in range(1, 101):
        two_k = 2 * k
        if any(two_k % (p * p) == 0 for p in range(2, 11)):
            continue
        assert not has_nontrivial_overlattice(builtin_gram(f"U+<{-two_k}>")), k


def test_isotropic_vectors_are_primitive_and_isotropic():
    lattice = builtin_gram("U+<-10>")
    vectors = isotropic_vectors(lattice, 5)
    assert (1, 0, 0) in vectors
    assert (0, 1, 0) in vectors
    assert (5, 1, 1) in vectors
    for v in vectors:
        assert norm(lattice, v) == 0
        assert is_primitive(v)
    heights = [max(abs(x) for x in v) for v in vectors]
    assert heights == sorted(heights)


def test_split_hyperbolic_plane():
    lattice = GramLattice(((8, 5, 3), (5, -2, 2), (3, 2, -2)))
    e, f = split_hyperbolic_plane(lattice, 8)
    assert norm(lattice, e) == 0
    assert norm(lattice, f) == 0
    assert inner(lattice, e, f) == 1
    assert split_hyperbolic_plane(builtin_gram("<2>+<-2>+<-2>"), 8) is None


def test_hyperbolic_block():
    assert has_hyperbolic_block(builtin_gram("U+<-10>"))
    assert has_hyperbolic_block(builtin_gram("U+E8(-1)"))
    assert not has_hyperbolic_block(builtin_gram("<2>+<-2>"))
    with pytest.raises(ValueError):
        find_isometry_by_hyperbolic_split(builtin_gram("<2>+<-2>"), builtin_gram("<2>+<-2>"))


def test_hyperbolic_split_reaches_large_coefficients():
    # The box of radius 40 is too small for this lattice
    left = GramLattice(((8, 5, 3), (5, -2, 2), (3, 2, -2)))
    right = builtin_gram("U+<-128>")
    assert not find_isometry(left, right, 40).found
    outcome = find_isometry_by_hyperbolic_split(left, right)
    assert outcome.found
    b = outcome.matrix
    image = [[sum(b[a][i] * left.gram[a][c] * b[c][j] for a in range(3) for c in range(3)) for j in range(3)] for i in range(3)]
    assert image == [list(r) for r in right.gram]
    assert find_isometry_by_hyperbolic_split(left, builtin_gram("U+<-126>")).reason == "invariant mismatch: determinant"
