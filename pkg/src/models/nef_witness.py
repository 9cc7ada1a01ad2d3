from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from models.gram_lattice import LatticeVector


@dataclass(frozen=True)
class SearchConfig:
    """Parameters of one nef-vector search run."""
    max_k: int
    min_roots: int = 2
    max_roots: int = 8
    witness_cap: int = 4
    threads: int = 1

    def __post_init__(self):
        if self.max_k < 1:
            raise ValueError(f"max_k must be positive, got {self.max_k}")
        if not 0 <= self.min_roots <= self.max_roots:
            raise ValueError(f"Invalid root window [{self.min_roots}, {self.max_roots}]")
        if self.witness_cap < 1:
            raise ValueError(f"witness_cap must be positive, got {self.witness_cap}")
        if self.threads < 1:
            raise ValueError(f"threads must be positive, got {self.threads}")

    @property
    def max_norm(self) -> int:
        return 2 * self.max_k

    def identity(self) -> Dict[str, int]:
        """Fields that must agree between a checkpoint and the run resuming it."""
        return {
            "max_k": self.max_k,
            "min_roots": self.min_roots,
            "max_roots": self.max_roots,
            "witness_cap": self.witness_cap,
        }


@dataclass(frozen=True)
class NefWitness:
    """A primitive nef vector D = sum d_i D_i together with its root data."""
    k: int
    d_coeffs: LatticeVector
    c_coords: LatticeVector
    root_type: str
    root_count: int
    subdiagram: Tuple[int, ...]
    primitive: bool = True

    @property
    def norm(self) -> int:
        return 2 * self.k


@dataclass
class SearchResult:
    """Merged output of a search: witnesses per k and the realizable set."""
    config: SearchConfig
    witnesses: Dict[int, List[NefWitness]] = field(default_factory=dict)
    partitions_done: int = 0
    partitions_total: int = 0
    nodes_visited: int = 0

    @property
    def realizable(self) -> List[int]:
        return sorted(self.witnesses)

    @property
    def complete(self) -> bool:
        return self.partitions_done == self.partitions_total


@dataclass(frozen=True)
class LargeKWitness:
    """Explicit data for the large-k construction l = alpha e + beta f + v."""
    k: int
    alpha: int
    beta: int
    n: int
    e8_vector: Tuple[int, ...] = ()
    l_coords: Tuple[int, ...] = ()
    root_count: int = -1
    reason: str = "not searched"

    @property
    def has_vector(self) -> bool:
        return bool(self.e8_vector)


@dataclass(frozen=True)
class E8VectorSearch:
    """Outcome of a bounded search for an E8 vector with few orthogonal roots."""
    n: int
    vector: Tuple[int, ...]
    root_count: int
    nodes_visited: int
    reason: str

    @property
    def found(self) -> bool:
        return bool(self.vector)
