import pytest

from services.isometry_catalog import (
    QUARTIC,
    THREE_QUADRICS,
    CatalogEntry,
    catalog_entries,
    certify,
    certify_catalog,
    elliptic_section_gram,
    hyperelliptic_quartic_gram,
    overlattice_free_values,
    target_lattice,
)
from models.gram_lattice import GramLattice


def test_family_determinants():
    for entry in catalog_entries():
        lattice = entry.lattice()
        assert lattice.determinant == 2 * entry.k, entry.name
        assert lattice.signature == (1, 2), entry.name


def test_catalog_values():
    printed = sorted(e.k for e in catalog_entries(elliptic_ks=(), hyperelliptic_ks=()))
    assert printed == sorted([5, 10, 13, 16, 19, 26, 7, 17, 9, 21, 25, 29, 37, 31, 34, 36, 39, 41, 43, 49, 59, 61, 64])


def test_certified_matrix_is_unimodular_isometry():
    entry = next(e for e in catalog_entries() if e.k == 10 and e.family == "quartic")
    outcome = certify(entry)
    assert outcome.found
    b = outcome.matrix
    g = entry.gram
    image = [[sum(b[a][i] * g[a][c] * b[c][j] for a in range(3) for c in range(3)) for j in range(3)] for i in range(3)]
    assert tuple(map(tuple, image)) == target_lattice(10).gram


def test_whole_catalog_certifies():
    failures = [entry.name for entry, outcome in certify_catalog() if not outcome.found]
    assert failures == []


@pytest.mark.parametrize("family, k", [("quartic", 19), ("nodal-quartic", 17), ("three-quadrics", 64)])
def test_entries_with_large_coefficients_certify(family, k):
    entry = next(e for e in catalog_entries() if e.family == family and e.k == k)
    outcome = certify(entry)
    assert outcome.found
    b, g = outcome.matrix, entry.gram
    image = [[sum(b[a][i] * g[a][c] * b[c][j] for a in range(3) for c in range(3)) for j in range(3)] for i in range(3)]
    assert tuple(map(tuple, image)) == target_lattice(k).gram


def test_wrong_degree_is_rejected():
    outcome = certify(CatalogEntry("quartic", 11, QUARTIC[10]))
    assert not outcome.found
    assert outcome.reason == "invariant mismatch: determinant"


def test_family_builders_validate_k():
    with pytest.raises(ValueError):
        elliptic_section_gram(1)
    with pytest.raises(ValueError):
        hyperelliptic_quartic_gram(5)
    assert GramLattice(hyperelliptic_quartic_gram(8)).determinant == 16


def test_three_quadrics_overlattice_free():
    assert overlattice_free_values(sorted(THREE_QUADRICS)) == [31, 34, 39, 41, 43, 59, 61]
