import dataclasses

import pytest

from models.errors import DataIntegrityError
from models.k_status import STATUS_GENERAL_TYPE, STATUS_KODAIRA_NONNEG, STATUS_OPEN, STATUS_UNIRATIONAL
from models.nef_witness import NefWitness
from models.witness_repository import WitnessRepository
from services.classification_service import (
    WindowEvidence,
    check_against_tables,
    classify,
    expected_general_type,
    load_evidence,
    records_frame,
    render_markdown,
    weight_of,
)
from services.nef_search import dual_gram_checksum


def test_weights():
    assert weight_of(2).weight == 13
    assert weight_of(8).flag == "low-weight"
    assert weight_of(10).weight == 17
    assert weight_of(10).flag == "boundary"
    assert weight_of(12).flag is None
    with pytest.raises(ValueError):
        weight_of(3)


def test_expected_tables():
    general = expected_general_type(230)
    assert 170 in general and 208 in general
    assert 211 not in general and 219 not in general
    assert min(general) == 170


@pytest.fixture
def windows(tmp_path, search_230_r8, search_230_r10):
    paths = []
    for result in (search_230_r8, search_230_r10):
        path = tmp_path / f"r{result.config.max_roots}.jsonl"
        WitnessRepository(path).save(result.config, result.witnesses, dual_gram_checksum(), result.complete)
        paths.append(path)
    return load_evidence(paths)


def test_classify_from_stores(windows):
    records = {r.k: r for r in classify(230, windows)}
    assert records[220].status == STATUS_GENERAL_TYPE
    assert records[220].evidence[0].startswith("r8.jsonl:L")
    assert records[220].computed_witness
    assert records[211].status == STATUS_KODAIRA_NONNEG
    assert records[211].evidence[0].startswith("r10.jsonl:L")
    assert records[5].status == STATUS_UNIRATIONAL
    assert records[5].evidence == ["unirational-list"]
    assert records[28].evidence == ["unirational-external-BH17"]
    assert records[100].status == STATUS_OPEN
    assert not records[100].partial
    assert check_against_tables(list(records.values()), windows) == []


def test_weight_comes_from_smallest_root_count(windows):
    record = next(r for r in classify(230, windows) if r.k == 220)
    best = min(w.root_count for _, w in windows[8].witnesses[220])
    assert record.weight == 12 + best // 2


def test_classify_without_stores():
    records = classify(4900, {})
    assert records[4899].status == STATUS_GENERAL_TYPE
    assert records[4899].evidence == ["large-k-construction"]
    assert records[99].status == STATUS_OPEN
    assert records[99].partial


def test_conflicting_evidence_rejected():
    witness = NefWitness(10, (0,) * 10, (0,) * 10, "A1", 2, (2,))
    evidence = WindowEvidence(8, 230, True, {10: [("fake.jsonl:L2", witness)]})
    with pytest.raises(DataIntegrityError):
        classify(230, {8: evidence})


def test_store_with_other_lower_bound_rejected(tmp_path, search_230_r8):
    path = tmp_path / "r8_from_zero.jsonl"
    config = dataclasses.replace(search_230_r8.config, min_roots=0)
    WitnessRepository(path).save(config, search_230_r8.witnesses, dual_gram_checksum(), True)
    with pytest.raises(DataIntegrityError):
        load_evidence([path])


def test_renderers(windows):
    records = classify(230, windows)
    frame = records_frame(records)
    assert len(frame) == 230
    assert set(frame["status"]) == {STATUS_GENERAL_TYPE, STATUS_KODAIRA_NONNEG, STATUS_UNIRATIONAL, STATUS_OPEN}
    text = render_markdown(records, 230)
    assert "General type for every k >= 220" in text
    assert "| 220 | general_type |" in text
