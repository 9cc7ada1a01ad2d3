import pytest
from pydantic import ValidationError

from models.errors import DataIntegrityError
from models.nef_witness import SearchConfig
from models.witness_repository import CheckpointRepository, WitnessRepository
from services.nef_search import dual_gram_checksum


def test_store_layout(tmp_path, search_230_r8):
    repo = WitnessRepository(tmp_path / "w.jsonl")
    repo.save(search_230_r8.config, search_230_r8.witnesses, dual_gram_checksum())
    header, grouped = repo.load()
    assert header.config.max_roots == 8
    assert header.realizable_count == len(search_230_r8.realizable)
    assert header.dual_gram_sha256 == dual_gram_checksum()
    assert sorted(grouped) == search_230_r8.realizable
    first_line, first = grouped[min(grouped)][0]
    assert first_line == 2
    assert first == search_230_r8.witnesses[min(grouped)][0]
    assert repo.evidence_ref(first_line) == "w.jsonl:L2"
    assert repo.realizable_path.read_text().startswith("[170,")


def test_empty_store(tmp_path):
    path = tmp_path / "empty.jsonl"
    path.write_text("")
    with pytest.raises(DataIntegrityError):
        WitnessRepository(path).load_header()


def test_witness_line_validation(tmp_path):
    path = tmp_path / "short.jsonl"
    path.write_text(
        '{"type": "header", "config": {"max_k": 1, "min_roots": 2, "max_roots": 8, "witness_cap": 4}, "dual_gram_sha256": "x"}\n'
        '{"type": "witness", "k": 1, "d_coeffs": [1], "c_coords": [1], "root_type": "A1", "root_count": 2, "subdiagram": [2]}\n'
    )
    with pytest.raises(ValidationError):
        list(WitnessRepository(path).iter_witnesses())


def test_checkpoint_round_trip(tmp_path):
    config = SearchConfig(max_k=50)
    repo = CheckpointRepository(tmp_path / "c.json")
    assert repo.load(config, "abc") is None
    repo.save(config, "abc", [(0, 1), (0, 2)], {7: [(0, (1, 0, 2))]})
    record = repo.load(config, "abc")
    assert record.completed == [(0, 1), (0, 2)]
    assert record.partial == {7: [(0, [1, 0, 2])]}
    with pytest.raises(DataIntegrityError):
        repo.load(config, "other")
    with pytest.raises(DataIntegrityError):
        repo.load(SearchConfig(max_k=51), "abc")
