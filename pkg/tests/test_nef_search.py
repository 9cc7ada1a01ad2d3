import dataclasses
import random

import pytest

from models.errors import DataIntegrityError, NonUnimodularError
from models.nef_witness import E8VectorSearch, SearchConfig
from models.root_system_label import RootSystemLabel
from models.witness_repository import CheckpointRepository
from services import nef_search
from services.classification_service import expected_general_type, expected_nonneg
from services.lattice_core import norm
from services.nef_search import (
    admissible_subdiagrams,
    brute_force_realizable,
    coefficient_bounds,
    dual_basis,
    dual_gram_checksum,
    e10_dual_basis,
    find_e8_vector,
    large_k_parameters,
    large_k_witness,
    search,
    split_condition_holds,
    verify_witness,
)
from services.root_systems import ade_lattice, e10_lattice


def test_dual_basis_pairs_to_identity():
    lattice = e10_lattice()
    basis = e10_dual_basis()
    for i, d in enumerate(basis.vectors):
        pairing = [sum(d[a] * lattice.gram[a][j] for a in range(10)) for j in range(10)]
        assert pairing == [int(i == j) for j in range(10)]
    assert basis.norms == (0, 2, 6, 12, 20, 30, 42, 10, 18, 4)


def test_dual_basis_needs_unimodular_lattice():
    with pytest.raises(NonUnimodularError):
        dual_basis(ade_lattice("A", 2))


def test_checksum_is_stable():
    assert dual_gram_checksum() == dual_gram_checksum()
    assert len(dual_gram_checksum()) == 64


def test_admissible_subdiagrams():
    narrow = {sub.label for sub in admissible_subdiagrams(8)}
    assert narrow == {RootSystemLabel.parse(t) for t in ("A1", "2A1", "3A1", "4A1", "A2", "A2+A1")}
    wide = {sub.label for sub in admissible_subdiagrams(10)}
    assert wide - narrow == {RootSystemLabel.parse("5A1"), RootSystemLabel.parse("A2+2A1")}
    sizes = [len(sub.nodes) for sub in admissible_subdiagrams(10)]
    assert sizes == sorted(sizes)


def test_coefficient_bounds():
    bounds = coefficient_bounds((2,), 9800)
    assert 2 not in bounds
    assert bounds[3] == 40
    assert bounds[1] == 168
    assert 1 not in coefficient_bounds((1, 3), 9800)
    assert coefficient_bounds((2,), 9800, loose_d1=True)[1] == 337


def test_loose_d1_bound_finds_nothing_new(search_230_r8):
    loose = search(SearchConfig(max_k=230, max_roots=8), loose_d1=True)
    assert loose.partitions_total > search_230_r8.partitions_total
    assert loose.realizable == search_230_r8.realizable


def test_search_reproduces_general_type_values():
    result = search(SearchConfig(max_k=300, max_roots=8))
    assert result.complete
    assert set(result.realizable) == expected_general_type(300)


def test_search_reproduces_nonneg_values():
    result = search(SearchConfig(max_k=300, max_roots=10))
    assert set(result.realizable) == expected_nonneg(300)


def test_witnesses_are_consistent(search_230_r8):
    lattice = e10_lattice()
    for k, witnesses in search_230_r8.witnesses.items():
        assert 1 <= len(witnesses) <= 4
        for w in witnesses:
            assert w.k == k
            assert norm(lattice, w.c_coords) == 2 * k
            assert all(d >= 0 for d in w.d_coeffs)
            assert all(w.d_coeffs[i - 1] == 0 for i in w.subdiagram)
            assert 2 <= w.root_count <= 8


def test_search_is_independent_of_threads(search_230_r8):
    parallel = search(SearchConfig(max_k=230, max_roots=8, threads=4))
    assert parallel.witnesses == search_230_r8.witnesses


def test_resume_from_checkpoint(tmp_path, search_230_r8):
    config = SearchConfig(max_k=230, max_roots=8)
    checkpoint = CheckpointRepository(tmp_path / "run.checkpoint.json")
    search(config, checkpoint=checkpoint)
    resumed = search(config, checkpoint=checkpoint, resume=True)
    assert resumed.witnesses == search_230_r8.witnesses
    assert resumed.complete
    with pytest.raises(DataIntegrityError):
        search(SearchConfig(max_k=231, max_roots=8), checkpoint=checkpoint, resume=True)


@pytest.mark.slow
def test_every_witness_verifies(search_230_r8):
    for witnesses in search_230_r8.witnesses.values():
        for w in witnesses:
            assert verify_witness(w)


def test_tampered_witness_fails(search_230_r8):
    w = search_230_r8.witnesses[220][0]
    assert verify_witness(w)
    assert not verify_witness(dataclasses.replace(w, root_count=w.root_count + 2))
    assert not verify_witness(dataclasses.replace(w, k=w.k + 1))
    assert not verify_witness(dataclasses.replace(w, root_type="A3"))


@pytest.mark.slow
def test_brute_force_matches_search(search_230_r8):
    found = brute_force_realizable(230)
    assert 170 in found
    assert found == search_230_r8.realizable


def test_large_k_parameters():
    assert large_k_parameters(4900) == (76, 77, 952)
    assert large_k_parameters(4901) == (77, 78, 1105)
    assert split_condition_holds(4900, 76, 77)
    assert not split_condition_holds(4900, 76, 76)
    assert not split_condition_holds(100, 16, 17)


def test_large_k_witness_without_vector():
    witness = large_k_witness(4900)
    assert (witness.alpha, witness.beta, witness.n) == (76, 77, 952)
    assert not witness.has_vector


def test_e8_vector_search_budget():
    outcome = find_e8_vector(952, node_budget=10)
    assert not outcome.found
    assert outcome.reason == "budget exhausted"


@pytest.mark.slow
def test_large_k_witness_with_vector(monkeypatch):
    witness = large_k_witness(4900, find_vector=True)
    assert witness.has_vector
    assert witness.reason == "found"
    assert 2 <= witness.root_count <= 8

    found = E8VectorSearch(witness.n, witness.e8_vector, witness.root_count, 0, "found")
    monkeypatch.setattr(nef_search, "find_e8_vector", lambda n, window, budget: found)
    with pytest.raises(DataIntegrityError):
        large_k_witness(4900, find_vector=True, window=(10, 20))


def test_large_k_witness_keeps_search_reason():
    witness = large_k_witness(4900, find_vector=True, node_budget=10)
    assert not witness.has_vector
    assert witness.reason == "budget exhausted"
    assert large_k_witness(4900).reason == "not searched"


def test_sporadic_values_of_wide_window():
    result = search(SearchConfig(max_k=162, max_roots=10))
    assert result.realizable == [140, 146, 150, 152, 154, 155, 158, 160, 162]


def test_window_monotonicity(search_230_r8, search_230_r10):
    assert set(search_230_r8.realizable) <= set(search_230_r10.realizable)


def test_negated_coefficient_fails(search_230_r8):
    w = search_230_r8.witnesses[170][0]
    index = next(i for i, d in enumerate(w.d_coeffs) if d)
    d = list(w.d_coeffs)
    d[index] = -d[index]
    assert not verify_witness(dataclasses.replace(w, d_coeffs=tuple(d)))


def test_split_condition_examples():
    assert not split_condition_holds(100, 9, 120)


def test_large_k_parameters_on_random_k():
    rng = random.Random(4900)
    for k in rng.sample(range(4900, 20001), 50):
        alpha, beta, n = large_k_parameters(k)
        assert split_condition_holds(k, alpha, beta)
        assert n == alpha * beta - k
        assert n >= 952


def test_large_k_witness_rejects_small_k():
    with pytest.raises(ValueError):
        large_k_witness(4899)


def test_e8_roots_have_too_many_orthogonal_roots():
    outcome = find_e8_vector(1)
    assert not outcome.found
    assert outcome.reason == "no vector in window"
    assert find_e8_vector(1, window=(126, 126)).root_count == 126
