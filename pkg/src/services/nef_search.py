"""Exhaustive search for primitive nef vectors of U+E8(-1) orthogonal to few roots.

Vectors are written as D = sum d_i D_i in the dual basis of the E10 diagram.
D is nef exactly when every d_i >= 0, and the roots orthogonal to a nef D
are the roots of the subdiagram J = {i : d_i = 0}.
"""
import hashlib
import json
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

import numpy as np
from sympy import Matrix

from constants import (
    CHECKPOINT_INTERVAL_SECONDS,
    E10_NODES,
    E8_SHELL_THRESHOLD,
    LARGE_K_ALPHA_OFFSET,
    LARGE_K_THRESHOLD,
    SEARCH_LOGGER_NAME,
)
from models.errors import (
    BudgetExhaustedError,
    DataIntegrityError,
    LatticeError,
    NonUnimodularError,
    NotADEClassifiableError,
)
from models.gram_lattice import GramLattice, IntMatrix, LatticeVector
from models.nef_witness import E8VectorSearch, LargeKWitness, NefWitness, SearchConfig, SearchResult
from models.root_system_label import RootSystemLabel
from models.witness_repository import CheckpointRepository
from services.enumeration import ShortVectorWalker
from services.lattice_core import is_primitive, norm
from services.root_systems import (
    ade_lattice,
    classify_subdiagram,
    e10_lattice,
    enumerate_roots,
    orthogonal_root_count,
    orthogonal_roots,
    root_system_type,
    u_plus_e8_lattice,
)

logger = logging.getLogger(__name__)
search_logger = logging.getLogger(SEARCH_LOGGER_NAME)

DUAL_GRAM_RESOURCE = Path(__file__).parent.parent / "resources" / "e10_dual_gram.json"


@dataclass(frozen=True)
class DualBasis:
    """Dual basis D_1..D_n of a unimodular lattice; D_i.C_j = delta_ij."""
    gram: IntMatrix

    @property
    def vectors(self) -> Tuple[LatticeVector, ...]:
        """D_i in the original coordinates (the inverse Gram matrix is symmetric)."""
        return self.gram

    @property
    def norms(self) -> Tuple[int, ...]:
        return tuple(self.gram[i][i] for i in range(len(self.gram)))

    def to_original(self, d: Sequence[int]) -> LatticeVector:
        n = len(self.gram)
        return tuple(sum(self.gram[i][j] * d[j] for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class Subdiagram:
    nodes: Tuple[int, ...]
    label: RootSystemLabel

    @property
    def root_count(self) -> int:
        return self.label.root_count


def dual_basis(lattice: GramLattice) -> DualBasis:
    """Dual basis of a unimodular lattice, via the exact inverse Gram matrix."""
    if abs(lattice.determinant) != 1:
        raise NonUnimodularError(f"{lattice.label()} has determinant {lattice.determinant}")
    inverse = Matrix(lattice.gram).inv()
    return DualBasis(tuple(tuple(int(x) for x in inverse.row(i)) for i in range(lattice.rank)))


def _load_frozen_dual_gram() -> IntMatrix:
    with open(DUAL_GRAM_RESOURCE) as f:
        data = json.load(f)
    return tuple(tuple(int(x) for x in row) for row in data["dual_gram"])


@lru_cache(maxsize=1)
def e10_dual_basis() -> DualBasis:
    """Dual basis of E10, checked against the frozen copy and the sign pattern the search relies on."""
    basis = dual_basis(e10_lattice())
    if basis.gram != _load_frozen_dual_gram():
        raise DataIntegrityError(f"Computed dual Gram matrix differs from {DUAL_GRAM_RESOURCE.name}")
    norms = basis.norms
    if norms[0] != 0 or any(v <= 0 for v in norms[1:]):
        raise DataIntegrityError(f"Unexpected dual norms {norms}")
    if any(x < 0 for row in basis.gram for x in row):
        raise DataIntegrityError("Dual basis pairings must be non-negative")
    return basis


def dual_gram_checksum() -> str:
    payload = json.dumps([list(r) for r in e10_dual_basis().gram], separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()


def admissible_subdiagrams(max_roots: int, min_roots: int = 2) -> List[Subdiagram]:
    """Subsets J of the E10 nodes whose root system has between min_roots and max_roots roots.

    Ordered by size, then lexicographically; this order fixes partition order in the search.
    """
    result = []
    for size in range(len(E10_NODES) + 1):
        for nodes in combinations(E10_NODES, size):
            try:
                label = classify_subdiagram(nodes)
            except NotADEClassifiableError:
                continue
            if min_roots <= label.root_count <= max_roots:
                result.append(Subdiagram(nodes, label))
    return result


def coefficient_bounds(
    subset: Iterable[int], max_norm: int, basis: Optional[DualBasis] = None, loose_d1: bool = False
) -> Dict[int, int]:
    """Upper bounds for d_i, i not in subset, valid for every nef D with 0 < D^2 <= max_norm.

    For i >= 2, D^2 >= d_i^2 D_i^2. For i = 1, D^2 >= 2 d_1 sum_{j not in J, j != 1} D_1.D_j.
    With loose_d1 the factor 2 is dropped, which doubles the d_1 range.
    """
    basis = basis or e10_dual_basis()
    nodes = set(subset)
    m = basis.gram
    bounds: Dict[int, int] = {}
    for i in E10_NODES:
        if i in nodes or i == 1:
            continue
        bounds[i] = math.isqrt(max_norm // m[i - 1][i - 1])
    if 1 not in nodes:
        pairing_sum = sum(m[0][i - 1] for i in bounds)
        numerator = max_norm if loose_d1 else max_norm // 2
        bounds[1] = numerator // pairing_sum if pairing_sum else 0
    return bounds


@dataclass(frozen=True)
class PartitionTask:
    order: int
    subset_index: int
    subset: Tuple[int, ...]
    d1: int
    max_norm: int
    cap: int
    bounds: Tuple[Tuple[int, int], ...]
    dual_gram: IntMatrix


@dataclass(frozen=True)
class PartitionResult:
    order: int
    subset_index: int
    d1: int
    witnesses: Dict[int, List[Tuple[int, ...]]]
    nodes: int


def search_partition(task: PartitionTask) -> PartitionResult:
    """Enumerate all nef D with d_i = 0 exactly on the subset and d_1 fixed.

    The norm is monotone in each d_i because every dual pairing is non-negative,
    so each level stops once the norm with all later coordinates at 1 exceeds the bound.
    """
    m = task.dual_gram
    n = len(m)
    bounds = dict(task.bounds)
    free = [i - 1 for i in sorted(bounds) if i != 1]
    found: Dict[int, List[Tuple[int, ...]]] = {}
    nodes = 0
    if not free:
        return PartitionResult(task.order, task.subset_index, task.d1, found, nodes)

    tails = [free[p + 1:] for p in range(len(free))]
    tail_norms = [sum(m[i][j] for i in tail for j in tail) for tail in tails]
    last = len(free) - 1
    limit = task.max_norm
    d = [0] * n
    d[0] = task.d1
    start_c = [task.d1 * m[0][j] for j in range(n)]
    start_norm = task.d1 * task.d1 * m[0][0]

    def record(value: int, c: List[int]) -> None:
        k = value // 2
        bucket = found.get(k)
        if bucket is not None and len(bucket) >= task.cap:
            return
        if math.gcd(*c) != 1:
            return
        if bucket is None:
            found[k] = [tuple(d)]
        else:
            bucket.append(tuple(d))

    def place(p: int, value: int, c: List[int]) -> None:
        nonlocal nodes
        f = free[p]
        row = m[f]
        tail = tails[p]
        for t in range(1, bounds[f + 1] + 1):
            nodes += 1
            value += 2 * c[f] + row[f]
            c = [a + b for a, b in zip(c, row)]
            if value + 2 * sum(c[i] for i in tail) + tail_norms[p] > limit:
                break
            d[f] = t
            if p == last:
                if value > 0:
                    record(value, c)
            else:
                place(p + 1, value, c)
        d[f] = 0

    place(0, start_norm, start_c)
    return PartitionResult(task.order, task.subset_index, task.d1, found, nodes)


def build_tasks(config: SearchConfig, loose_d1: bool = False) -> Tuple[List[Subdiagram], List[PartitionTask]]:
    basis = e10_dual_basis()
    subsets = admissible_subdiagrams(config.max_roots, config.min_roots)
    tasks: List[PartitionTask] = []
    for index, sub in enumerate(subsets):
        bounds = coefficient_bounds(sub.nodes, config.max_norm, basis, loose_d1)
        frozen = tuple(sorted(bounds.items()))
        d1_values = range(1, bounds[1] + 1) if 1 in bounds else range(0, 1)
        for d1 in d1_values:
            tasks.append(PartitionTask(len(tasks), index, sub.nodes, d1, config.max_norm, config.witness_cap, frozen, basis.gram))
    return subsets, tasks


def _run_tasks(tasks: Sequence[PartitionTask], threads: int) -> Iterator[PartitionResult]:
    if threads <= 1:
        for task in tasks:
            yield search_partition(task)
        return
    with ProcessPoolExecutor(max_workers=threads) as executor:
        yield from executor.map(search_partition, tasks, chunksize=4)


def _merge(
    merged: Dict[int, List[Tuple[int, Tuple[int, ...]]]], result: PartitionResult, cap: int
) -> None:
    for k, ds in result.witnesses.items():
        bucket = merged.setdefault(k, [])
        room = cap - len(bucket)
        if room > 0:
            bucket.extend((result.subset_index, dv) for dv in ds[:room])


def search(
    config: SearchConfig,
    checkpoint: Optional[CheckpointRepository] = None,
    resume: bool = False,
    loose_d1: bool = False,
) -> SearchResult:
    """Run every (subdiagram, d_1) partition and merge witnesses in partition order.

    The merged result does not depend on config.threads.
    """
    basis = e10_dual_basis()
    checksum = dual_gram_checksum()
    subsets, tasks = build_tasks(config, loose_d1)
    merged: Dict[int, List[Tuple[int, Tuple[int, ...]]]] = {}
    completed: List[Tuple[int, int]] = []
    done: Set[Tuple[int, int]] = set()

    if resume and checkpoint is not None:
        record = checkpoint.load(config, checksum)
        if record is not None:
            completed = [tuple(pair) for pair in record.completed]  # type: ignore[misc]
            done = set(completed)
            merged = {k: [(idx, tuple(dv)) for idx, dv in v] for k, v in record.partial.items()}
            search_logger.info(f"Resuming search with {len(done)} of {len(tasks)} partitions done")

    pending = [t for t in tasks if (t.subset_index, t.d1) not in done]
    search_logger.info(
        f"Searching max_k={config.max_k}, roots in [{config.min_roots}, {config.max_roots}]: "
        f"{len(subsets)} subdiagrams, {len(pending)} partitions, {config.threads} worker(s)"
    )
    nodes = 0
    last_save = time.monotonic()
    try:
        for result in _run_tasks(pending, config.threads):
            _merge(merged, result, config.witness_cap)
            completed.append((result.subset_index, result.d1))
            nodes += result.nodes
            if checkpoint is not None and time.monotonic() - last_save > CHECKPOINT_INTERVAL_SECONDS:
                checkpoint.save(config, checksum, completed, merged)
                last_save = time.monotonic()
                search_logger.info(f"Checkpoint: {len(completed)}/{len(tasks)} partitions, {len(merged)} values of k")
    except KeyboardInterrupt:
        if checkpoint is not None:
            checkpoint.save(config, checksum, completed, merged)
            search_logger.warning(f"Search interrupted, checkpoint saved to {checkpoint.path}")
        raise

    # Resumed runs merge out of order, so restore partition order before capping
    order = {(t.subset_index, t.d1): t.order for t in tasks}
    witnesses: Dict[int, List[NefWitness]] = {}
    for k in sorted(merged):
        entries = sorted(merged[k], key=lambda e: order[(e[0], e[1][0])])[: config.witness_cap]
        witnesses[k] = [_make_witness(k, subsets[idx], dv, basis) for idx, dv in entries]
    if checkpoint is not None:
        checkpoint.save(config, checksum, completed, merged)
    search_logger.info(f"Search finished: {len(witnesses)} realizable values of k, {nodes} nodes")
    return SearchResult(config, witnesses, len(completed), len(tasks), nodes)


def _make_witness(k: int, sub: Subdiagram, d: Tuple[int, ...], basis: DualBasis) -> NefWitness:
    c = basis.to_original(d)
    return NefWitness(
        k=k,
        d_coeffs=tuple(d),
        c_coords=c,
        root_type=str(sub.label),
        root_count=sub.root_count,
        subdiagram=sub.nodes,
        primitive=is_primitive(c),
    )


def verify_witness(witness: NefWitness) -> bool:
    """Recompute a witness from scratch through the complement and root enumeration."""
    lattice = e10_lattice()
    basis = e10_dual_basis()
    try:
        if any(x < 0 for x in witness.d_coeffs):
            logger.warning(f"Witness for k={witness.k} has negative dual coefficients")
            return False
        if basis.to_original(witness.d_coeffs) != tuple(witness.c_coords):
            logger.warning(f"Witness for k={witness.k}: c-coordinates do not match d-coefficients")
            return False
        if norm(lattice, witness.c_coords) != 2 * witness.k:
            logger.warning(f"Witness for k={witness.k}: norm is not {2 * witness.k}")
            return False
        if not is_primitive(witness.c_coords) or not witness.primitive:
            logger.warning(f"Witness for k={witness.k} is not primitive")
            return False
        roots = orthogonal_roots(lattice, witness.c_coords)
        if len(roots) != witness.root_count:
            logger.warning(f"Witness for k={witness.k}: {len(roots)} orthogonal roots, recorded {witness.root_count}")
            return False
        if str(root_system_type(lattice, roots)) != witness.root_type:
            logger.warning(f"Witness for k={witness.k}: root type differs from {witness.root_type}")
            return False
        if str(classify_subdiagram(witness.subdiagram)) != witness.root_type:
            logger.warning(f"Witness for k={witness.k}: subdiagram {witness.subdiagram} is not {witness.root_type}")
            return False
    except LatticeError as e:
        logger.warning(f"Witness for k={witness.k} failed verification: {e}")
        return False
    return True


def brute_force_realizable(max_k: int, min_roots: int = 2, max_roots: int = 8) -> List[int]:
    """Values of k realized by nef vectors enumerated without coefficient bounds.

    Every nef D with 0 < D^2 <= 2 max_k is reached from its dual coefficients,
    limited only by the norm, and its orthogonal roots are counted through the
    complement. The simple roots C_j with d_j = 0 are orthogonal to D, so vectors
    with more than max_roots / 2 zero coefficients are skipped before the count.
    """
    lattice = e10_lattice()
    m = e10_dual_basis().gram
    n = len(m)
    limit = 2 * max_k
    max_zeros = max_roots // 2
    # D_1 has norm 0, so its coefficient is bounded only once the others are placed
    order = list(range(1, n)) + [0]
    realizable: Set[int] = set()
    candidates = 0
    exact_checks = 0

    def place(p: int, value: int, c: List[int], zeros: int) -> None:
        nonlocal candidates, exact_checks
        if p == n:
            if value == 0 or math.gcd(*c) != 1:
                return
            candidates += 1
            if value // 2 in realizable:
                return
            exact_checks += 1
            if min_roots <= orthogonal_root_count(lattice, c) <= max_roots:
                realizable.add(value // 2)
            return
        i = order[p]
        row = m[i]
        if zeros < max_zeros:
            place(p + 1, value, c, zeros + 1)
        while True:
            value += 2 * c[i] + row[i]
            c = [a + b for a, b in zip(c, row)]
            if value > limit or (value == 0 and c[i] == 0):
                break
            place(p + 1, value, c, zeros)

    place(0, 0, [0] * n, 0)
    logger.info(f"Brute force over {candidates} nef vectors, {exact_checks} exact root counts")
    return sorted(realizable)


def split_condition_holds(k: int, alpha: int, beta: int) -> bool:
    """Conditions on l = alpha e + beta f + v that keep roots of U away from l^perp."""
    return alpha != beta and alpha * alpha > k and beta * beta > k and 4 * alpha * beta < 5 * k


def large_k_parameters(k: int) -> Tuple[int, int, int]:
    """(alpha, beta, n) with alpha = ceil(sqrt(k) + 6), beta = alpha + 1, n = alpha beta - k."""
    root = math.isqrt(k)
    ceil_root = root if root * root == k else root + 1
    alpha = ceil_root + LARGE_K_ALPHA_OFFSET
    beta = alpha + 1
    return alpha, beta, alpha * beta - k


@lru_cache(maxsize=1)
def _e8_roots_times_gram() -> np.ndarray:
    e8 = ade_lattice("E", 8)
    roots = np.array(enumerate_roots(e8), dtype=np.int64)
    return roots @ np.array(e8.gram, dtype=np.int64)


def find_e8_vector(n: int, window: Tuple[int, int] = (2, 8), node_budget: Optional[int] = None) -> E8VectorSearch:
    """First vector of E8 with norm 2n (in enumeration order) orthogonal to a number of roots in the window."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    e8 = ade_lattice("E", 8)
    roots_g = _e8_roots_times_gram()
    walker = ShortVectorWalker(e8.gram, node_budget)
    try:
        for v, _ in walker.walk(2 * n, exact=True):
            count = int(np.count_nonzero(roots_g @ np.array(v, dtype=np.int64) == 0))
            if window[0] <= count <= window[1]:
                return E8VectorSearch(n, v, count, walker.nodes_visited, "found")
    except BudgetExhaustedError:
        logger.warning(f"E8 shell {2 * n}: node budget {node_budget} exhausted")
        return E8VectorSearch(n, (), -1, walker.nodes_visited, "budget exhausted")
    return E8VectorSearch(n, (), -1, walker.nodes_visited, "no vector in window")


def large_k_witness(
    k: int, find_vector: bool = False, window: Tuple[int, int] = (2, 8), node_budget: Optional[int] = None
) -> LargeKWitness:
    """Parameters of the large-k construction, optionally with an explicit vector l."""
    if k < LARGE_K_THRESHOLD:
        raise ValueError(f"The construction needs k >= {LARGE_K_THRESHOLD}, got {k}")
    alpha, beta, n = large_k_parameters(k)
    if not split_condition_holds(k, alpha, beta):
        raise ValueError(f"k={k} is too small for the construction (alpha={alpha}, beta={beta})")
    if n < E8_SHELL_THRESHOLD:
        raise DataIntegrityError(f"n={n} below {E8_SHELL_THRESHOLD} for k={k}")
    if not find_vector:
        return LargeKWitness(k, alpha, beta, n)
    outcome = find_e8_vector(n, window, node_budget)
    if not outcome.found:
        return LargeKWitness(k, alpha, beta, n, reason=outcome.reason)
    # In U+E8(-1) the E8 part keeps its coordinates and changes the sign of its form
    l_coords = (alpha, beta) + tuple(outcome.vector)
    lattice = u_plus_e8_lattice()
    if norm(lattice, l_coords) != 2 * k:
        raise DataIntegrityError(f"Constructed l has norm {norm(lattice, l_coords)}, expected {2 * k}")
    root_count = len(orthogonal_roots(lattice, l_coords))
    if not window[0] <= root_count <= window[1]:
        raise DataIntegrityError(f"l for k={k} is orthogonal to {root_count} roots, outside {window}")
    return LargeKWitness(k, alpha, beta, n, tuple(outcome.vector), l_coords, root_count, outcome.reason)
