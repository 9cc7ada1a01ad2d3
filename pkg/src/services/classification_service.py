"""Per-k classification built from stored search witnesses and the built-in tables."""
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Set, Tuple

import pandas as pd

from constants import (
    BASE_WEIGHT,
    CRITICAL_WEIGHT,
    DEFAULT_MIN_ROOTS,
    EVIDENCE_LARGE_K,
    EVIDENCE_UNIRATIONAL,
    EVIDENCE_UNIRATIONAL_EXTERNAL,
    GENERAL_TYPE_ALL_FROM,
    GENERAL_TYPE_GAPS,
    GENERAL_TYPE_SPORADIC,
    GENERAL_TYPE_START,
    LARGE_K_THRESHOLD,
    NONNEG_ALL_FROM,
    NONNEG_GAPS,
    NONNEG_SPORADIC,
    NONNEG_START,
    UNIRATIONAL_EXTERNAL_K,
    UNIRATIONAL_K,
)
from models.errors import DataIntegrityError
from models.k_status import (
    STATUS_GENERAL_TYPE,
    STATUS_KODAIRA_NONNEG,
    STATUS_OPEN,
    STATUS_UNIRATIONAL,
    KStatusRecord,
)
from models.nef_witness import NefWitness
from models.witness_repository import WitnessRepository

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WeightInfo:
    weight: int
    flag: Optional[str]


def weight_of(root_count: int) -> WeightInfo:
    """Weight 12 + N/2 of the quasi-pullback; below 17 the cusp-form argument applies."""
    if root_count < 0 or root_count % 2:
        raise ValueError(f"Root counts are even and non-negative, got {root_count}")
    weight = BASE_WEIGHT + root_count // 2
    if weight < CRITICAL_WEIGHT:
        flag = "low-weight"
    elif weight == CRITICAL_WEIGHT:
        flag = "boundary"
    else:
        flag = None
    return WeightInfo(weight, flag)


def expected_general_type(max_k: int) -> Set[int]:
    """Values of k below the large-k threshold realized with 2 to 8 roots."""
    tail = {k for k in range(GENERAL_TYPE_START, max_k + 1) if k not in GENERAL_TYPE_GAPS}
    return {k for k in GENERAL_TYPE_SPORADIC if k <= max_k} | tail


def expected_nonneg(max_k: int) -> Set[int]:
    """Values of k below the large-k threshold realized with 2 to 10 roots."""
    tail = {k for k in range(NONNEG_START, max_k + 1) if k not in NONNEG_GAPS}
    return {k for k in NONNEG_SPORADIC if k <= max_k} | tail


@dataclass
class WindowEvidence:
    """Witnesses of one search run, keyed by k, with evidence references."""
    max_roots: int
    max_k: int
    complete: bool
    witnesses: Dict[int, List[Tuple[str, NefWitness]]]

    def covers(self, k: int) -> bool:
        return self.complete and k <= self.max_k


def load_evidence(paths: Iterable[Path]) -> Dict[int, WindowEvidence]:
    """Load witness stores keyed by their root window upper bound.

    When two stores share a window, the one covering more k wins. Stores must
    have been searched with the lower root bound used by the classification.
    """
    windows: Dict[int, WindowEvidence] = {}
    for path in paths:
        repo = WitnessRepository(path)
        header, grouped = repo.load()
        if header.config.min_roots != DEFAULT_MIN_ROOTS:
            raise DataIntegrityError(
                f"{path} was searched with min_roots={header.config.min_roots}, expected {DEFAULT_MIN_ROOTS}"
            )
        evidence = WindowEvidence(
            header.config.max_roots,
            header.config.max_k,
            header.complete,
            {k: [(repo.evidence_ref(line), w) for line, w in items] for k, items in grouped.items()},
        )
        current = windows.get(evidence.max_roots)
        if current is None or evidence.max_k > current.max_k:
            windows[evidence.max_roots] = evidence
        logger.info(f"Loaded {len(grouped)} realizable values of k from {path} (max_roots={evidence.max_roots})")
    return windows


def _best(entries: List[Tuple[str, NefWitness]]) -> Tuple[str, NefWitness]:
    return min(entries, key=lambda e: (e[1].root_count, e[0]))


def classify(max_k: int, windows: Dict[int, WindowEvidence]) -> List[KStatusRecord]:
    """Status of every k in 1..max_k.

    Precedence is general type, then non-negative Kodaira dimension, then
    unirational, then open. Values of k not covered by a store are reported
    open and partial rather than guessed.
    """
    narrow = windows.get(8)
    wide = windows.get(10)
    records = []
    for k in range(1, max_k + 1):
        record = _classify_one(k, narrow, wide)
        if record.status == STATUS_GENERAL_TYPE and (k in UNIRATIONAL_K or k in UNIRATIONAL_EXTERNAL_K):
            raise DataIntegrityError(f"k={k} is both of general type and unirational")
        records.append(record)
    return records


def _classify_one(k: int, narrow: Optional[WindowEvidence], wide: Optional[WindowEvidence]) -> KStatusRecord:
    if k >= LARGE_K_THRESHOLD:
        return KStatusRecord(k, STATUS_GENERAL_TYPE, [EVIDENCE_LARGE_K])
    if narrow is not None and k in narrow.witnesses:
        ref, witness = _best(narrow.witnesses[k])
        return KStatusRecord(
            k, STATUS_GENERAL_TYPE, [ref], weight_of(witness.root_count).weight, witness.root_type,
            computed_witness=True,
        )
    if wide is not None and k in wide.witnesses:
        ref, witness = _best(wide.witnesses[k])
        return KStatusRecord(
            k, STATUS_KODAIRA_NONNEG, [ref], weight_of(witness.root_count).weight, witness.root_type,
            partial=narrow is None or not narrow.covers(k),
            computed_witness=True,
        )
    if k in UNIRATIONAL_K:
        return KStatusRecord(k, STATUS_UNIRATIONAL, [EVIDENCE_UNIRATIONAL])
    if k in UNIRATIONAL_EXTERNAL_K:
        return KStatusRecord(k, STATUS_UNIRATIONAL, [EVIDENCE_UNIRATIONAL_EXTERNAL])
    covered = narrow is not None and narrow.covers(k) and wide is not None and wide.covers(k)
    return KStatusRecord(k, STATUS_OPEN, [], partial=not covered)


def check_against_tables(records: List[KStatusRecord], windows: Dict[int, WindowEvidence]) -> List[str]:
    """Differences between computed statuses and the built-in realizable-k tables."""
    problems = []
    narrow, wide = windows.get(8), windows.get(10)
    limit = min(max((r.k for r in records), default=0), LARGE_K_THRESHOLD - 1)
    general = expected_general_type(limit)
    nonneg = expected_nonneg(limit)
    for record in records:
        if record.k >= LARGE_K_THRESHOLD:
            continue
        if narrow is not None and narrow.covers(record.k):
            if (record.status == STATUS_GENERAL_TYPE) != (record.k in general):
                problems.append(f"k={record.k}: status {record.status} disagrees with the general type table")
        if wide is not None and wide.covers(record.k) and record.status == STATUS_KODAIRA_NONNEG:
            if record.k not in nonneg:
                problems.append(f"k={record.k}: non-negative Kodaira dimension not in table")
    return problems


def tier_summary(max_k: int) -> Dict[str, int]:
    """Thresholds beyond which every k has the stated property."""
    return {
        "general_type_from": GENERAL_TYPE_ALL_FROM,
        "kodaira_nonneg_from": NONNEG_ALL_FROM,
        "large_k_from": LARGE_K_THRESHOLD,
        "max_k": max_k,
    }


def records_frame(records: List[KStatusRecord]) -> pd.DataFrame:
    return pd.DataFrame(
        {
            "k": [r.k for r in records],
            "status": [r.status for r in records],
            "weight": [r.weight for r in records],
            "evidence": [";".join(r.evidence) for r in records],
            "root_type": [r.root_type for r in records],
            "partial": [r.partial for r in records],
        }
    )


def render_markdown(records: List[KStatusRecord], max_k: int) -> str:
    lines = ["| k | status | weight | root type | evidence |", "|---|---|---|---|---|"]
    for r in records:
        status = r.status + (" (partial)" if r.partial else "")
        weight = "" if r.weight is None else str(r.weight)
        lines.append(f"| {r.k} | {status} | {weight} | {r.root_type or ''} | {', '.join(r.evidence)} |")
    general = sorted(expected_general_type(min(max_k, LARGE_K_THRESHOLD - 1)))
    nonneg = sorted(expected_nonneg(min(max_k, LARGE_K_THRESHOLD - 1)) - set(general))
    summary = tier_summary(max_k)
    lines += [
        "",
        f"General type for every k >= {summary['general_type_from']}; "
        f"non-negative Kodaira dimension for every k >= {summary['kodaira_nonneg_from']}.",
        f"Sporadic general type values up to {max_k}: {', '.join(str(k) for k in general if k < GENERAL_TYPE_START) or 'none'}.",
        f"Additional non-negative values up to {max_k}: {', '.join(str(k) for k in nonneg) or 'none'}.",
    ]
    return "\n".join(lines) + "\n"
