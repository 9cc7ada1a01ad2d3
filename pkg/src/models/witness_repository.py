import json
import logging
import os
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Tuple

from cli.models import CheckpointRecord, SearchConfigRecord, WitnessHeader, WitnessRecord
from models.errors import DataIntegrityError
from models.nef_witness import NefWitness, SearchConfig

logger = logging.getLogger(__name__)


def _config_record(config: SearchConfig) -> SearchConfigRecord:
    return SearchConfigRecord(**config.identity())


class WitnessRepository:
    """JSON-lines store of nef witnesses: one header line, then one line per witness."""

    def __init__(self, path: Path):
        self.path = Path(path)

    @property
    def realizable_path(self) -> Path:
        return self.path.with_suffix(".realizable.json")

    def save(self, config: SearchConfig, witnesses: Dict[int, List[NefWitness]], checksum: str, complete: bool = True) -> None:
        """Write the header and all witnesses, ordered by k, then the realizable set."""
        self.path.parent.mkdir(parents=True, exist_ok=True)
        header = WitnessHeader(
            config=_config_record(config),
            dual_gram_sha256=checksum,
            realizable_count=len(witnesses),
            complete=complete,
        )
        with open(self.path, "w") as f:
            f.write(header.model_dump_json() + "\n")
            for k in sorted(witnesses):
                for witness in witnesses[k]:
                    record = WitnessRecord(
                        k=witness.k,
                        d_coeffs=list(witness.d_coeffs),
                        c_coords=list(witness.c_coords),
                        root_type=witness.root_type,
                        root_count=witness.root_count,
                        subdiagram=list(witness.subdiagram),
                        primitive=witness.primitive,
                    )
                    f.write(record.model_dump_json() + "\n")
        self.realizable_path.write_text(json.dumps(sorted(witnesses)) + "\n")
        logger.info(f"Saved {sum(len(v) for v in witnesses.values())} witnesses for {len(witnesses)} values of k to {self.path}")

    def load_header(self) -> WitnessHeader:
        with open(self.path) as f:
            first = f.readline()
        if not first:
            raise DataIntegrityError(f"{self.path} is empty")
        return WitnessHeader.model_validate_json(first)

    def iter_witnesses(self) -> Iterator[Tuple[int, NefWitness]]:
        """Yield (line number, witness) for every witness line."""
        with open(self.path) as f:
            for line_no, line in enumerate(f, start=1):
                if line_no == 1 or not line.strip():
                    continue
                record = WitnessRecord.model_validate_json(line)
                yield line_no, NefWitness(
                    k=record.k,
                    d_coeffs=tuple(record.d_coeffs),
                    c_coords=tuple(record.c_coords),
                    root_type=record.root_type,
                    root_count=record.root_count,
                    subdiagram=tuple(record.subdiagram),
                    primitive=record.primitive,
                )

    def load(self) -> Tuple[WitnessHeader, Dict[int, List[Tuple[int, NefWitness]]]]:
        """Header and witnesses grouped by k, each paired with its line number."""
        header = self.load_header()
        grouped: Dict[int, List[Tuple[int, NefWitness]]] = {}
        for line_no, witness in self.iter_witnesses():
            grouped.setdefault(witness.k, []).append((line_no, witness))
        return header, grouped

    def evidence_ref(self, line_no: int) -> str:
        return f"{self.path.name}:L{line_no}"


class CheckpointRepository:
    """Single JSON object recording completed search partitions and partial witnesses."""

    def __init__(self, path: Path):
        self.path = Path(path)

    def exists(self) -> bool:
        return self.path.exists()

    def save(
        self,
        config: SearchConfig,
        checksum: str,
        completed: List[Tuple[int, int]],
        partial: Dict[int, List[Tuple[int, Tuple[int, ...]]]],
    ) -> None:
        record = CheckpointRecord(
            config=_config_record(config),
            dual_gram_sha256=checksum,
            completed=completed,
            partial={k: [(idx, list(d)) for idx, d in v] for k, v in partial.items()},
        )
        self.path.parent.mkdir(parents=True, exist_ok=True)
        tmp = self.path.with_suffix(self.path.suffix + ".tmp")
        tmp.write_text(record.model_dump_json())
        os.replace(tmp, self.path)
        logger.debug(f"Checkpoint written with {len(completed)} completed partitions")

    def load(self, config: SearchConfig, checksum: str) -> Optional[CheckpointRecord]:
        """Load a checkpoint written for the same config and dual Gram matrix."""
        if not self.exists():
            return None
        record = CheckpointRecord.model_validate_json(self.path.read_text())
        if record.config != _config_record(config):
            raise DataIntegrityError(f"Checkpoint {self.path} was written for {record.config}, not {config.identity()}")
        if record.dual_gram_sha256 != checksum:
            raise DataIntegrityError(f"Checkpoint {self.path} has a different dual Gram checksum")
        return record
