"""ADE root systems, named lattices and the E10 diagram."""
import logging
import re
from functools import lru_cache
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from constants import E10_EDGES, E10_NODES
from models.errors import IndefiniteLatticeError, NotADEClassifiableError, UnknownLatticeError
from models.gram_lattice import GramLattice, LatticeVector
from models.root_system_label import RootSystemLabel
from services.enumeration import iter_short_vectors, lll_reduce
from services.lattice_core import direct_sum, inner, orthogonal_complement

logger = logging.getLogger(__name__)

_SUMMAND_RE = re.compile(r"^(\d*)(U|A\d+|D\d+|E\d+|II_1_9|<-?\d+>)(?:\((-?\d+)\))?$")


def _gram_from_graph(n: int, edges: Iterable[Tuple[int, int]], diagonal: int, off: int) -> Tuple[Tuple[int, ...], ...]:
    rows = [[diagonal if i == j else 0 for j in range(n)] for i in range(n)]
    for a, b in edges:
        rows[a - 1][b - 1] = rows[b - 1][a - 1] = off
    return tuple(tuple(r) for r in rows)


def dynkin_edges(family: str, rank: int) -> List[Tuple[int, int]]:
    """Edges of the Dynkin diagram in Bourbaki numbering."""
    if family == "A":
        return [(i, i + 1) for i in range(1, rank)]
    if family == "D":
        return [(i, i + 1) for i in range(1, rank - 1)] + [(rank - 2, rank)]
    if family == "E":
        return [(1, 3), (2, 4)] + [(i, i + 1) for i in range(3, rank)]
    raise UnknownLatticeError(f"Unknown family {family!r}")


def ade_lattice(family: str, rank: int) -> GramLattice:
    """Positive-definite root lattice with its Cartan matrix as Gram matrix."""
    RootSystemLabel(((family, rank),))
    return GramLattice(_gram_from_graph(rank, dynkin_edges(family, rank), 2, -1), f"{family}{rank}")


def label_lattice(label: RootSystemLabel) -> GramLattice:
    if not label.components:
        return GramLattice((), str(label))
    lattice = direct_sum(*(ade_lattice(f, r) for f, r in label.components))
    return GramLattice(lattice.gram, str(label))


def hyperbolic_plane() -> GramLattice:
    return GramLattice(((0, 1), (1, 0)), "U")


@lru_cache(maxsize=1)
def e10_lattice() -> GramLattice:
    """U+E8(-1) in the basis C1..C10 of simple roots of the E10 diagram."""
    return GramLattice(_gram_from_graph(len(E10_NODES), E10_EDGES, -2, 1), "E10")


@lru_cache(maxsize=1)
def u_plus_e8_lattice() -> GramLattice:
    """U+E8(-1) in the split basis (e, f, alpha_1..alpha_8)."""
    e8 = ade_lattice("E", 8)
    negative = GramLattice(tuple(tuple(-x for x in row) for row in e8.gram), "E8(-1)")
    return direct_sum(hyperbolic_plane(), negative)


def _scaled(lattice: GramLattice, m: int) -> GramLattice:
    return GramLattice(tuple(tuple(m * x for x in row) for row in lattice.gram), f"{lattice.name}({m})")


def _base_lattice(base: str) -> GramLattice:
    if base == "U":
        return hyperbolic_plane()
    if base == "II_1_9":
        return u_plus_e8_lattice()
    if base == "E10":
        return e10_lattice()
    if base.startswith("<"):
        return GramLattice(((int(base[1:-1]),),), base)
    return ade_lattice(base[0], int(base[1:]))


def builtin_gram(name: str) -> GramLattice:
    """Parse names such as 'E8', 'U+E8(-1)', '2A1(-1)' or 'U+<-10>'."""
    text = name.replace(" ", "").replace("⊕", "+").replace("−", "-").replace("⟨", "<").replace("⟩", ">")
    if not text:
        raise UnknownLatticeError("Empty lattice name")
    pieces: List[GramLattice] = []
    for summand in text.split("+"):
        match = _SUMMAND_RE.match(summand)
        if not match:
            raise UnknownLatticeError(f"Unknown lattice summand {summand!r} in {name!r}")
        mult = int(match.group(1) or 1)
        lattice = _base_lattice(match.group(2))
        if match.group(3) is not None:
            lattice = _scaled(lattice, int(match.group(3)))
        pieces.extend([lattice] * mult)
    if len(pieces) == 1:
        return GramLattice(pieces[0].gram, text)
    return GramLattice(direct_sum(*pieces).gram, text)


def _definite_sign(lattice: GramLattice) -> int:
    if lattice.is_positive_definite:
        return 1
    if lattice.is_negative_definite:
        return -1
    raise IndefiniteLatticeError(f"{lattice.label()} is not definite, signature {lattice.signature}")


def enumerate_roots(lattice: GramLattice) -> List[LatticeVector]:
    """All vectors of norm +2 (positive definite) or -2 (negative definite), sorted."""
    if lattice.rank == 0:
        return []
    sign = _definite_sign(lattice)
    positive = [[sign * x for x in row] for row in lattice.gram]
    reduced, transform = lll_reduce(positive)
    n = lattice.rank
    roots = []
    for y, value in iter_short_vectors(reduced, 2):
        if value == 2:
            roots.append(tuple(sum(transform[i][j] * y[j] for j in range(n)) for i in range(n)))
    roots.sort()
    return roots


def orthogonal_roots(lattice: GramLattice, vector: Sequence[int]) -> List[LatticeVector]:
    """Roots of the definite complement of `vector`, in coordinates of `lattice`."""
    complement, basis = orthogonal_complement(lattice, [vector])
    if complement.rank and not (complement.is_positive_definite or complement.is_negative_definite):
        raise IndefiniteLatticeError(f"Complement of {tuple(vector)} is not definite")
    n = lattice.rank
    return sorted(
        tuple(sum(r[j] * basis[j][i] for j in range(len(basis))) for i in range(n))
        for r in enumerate_roots(complement)
    )


def orthogonal_root_count(lattice: GramLattice, vector: Sequence[int]) -> int:
    return len(orthogonal_roots(lattice, vector))


def root_count_formula(label: RootSystemLabel) -> int:
    return label.root_count


def _classify_tree(nodes: Sequence[int], adjacency: Dict[int, Set[int]]) -> Tuple[str, int]:
    size = len(nodes)
    edges = sum(len(adjacency[v]) for v in nodes) // 2
    if edges != size - 1:
        raise NotADEClassifiableError(f"Component {sorted(nodes)} contains a cycle")
    branch = [v for v in nodes if len(adjacency[v]) >= 3]
    if not branch:
        return "A", size
    if len(branch) > 1 or len(adjacency[branch[0]]) > 3:
        raise NotADEClassifiableError(f"Component {sorted(nodes)} is not a finite Dynkin diagram")
    centre = branch[0]
    arms = []
    for start in adjacency[centre]:
        length, prev, cur = 1, centre, start
        while True:
            nxt = [w for w in adjacency[cur] if w != prev]
            if not nxt:
                break
            if len(nxt) > 1:
                raise NotADEClassifiableError(f"Component {sorted(nodes)} branches twice")
            length, prev, cur = length + 1, cur, nxt[0]
        arms.append(length)
    p, q, r = sorted(arms)
    if p == 1 and q == 1:
        return "D", r + 3
    if (p, q) == (1, 2) and r in (2, 3, 4):
        return "E", r + 4
    raise NotADEClassifiableError(f"Component {sorted(nodes)} has arms {p}, {q}, {r}")


def classify_graph(nodes: Iterable[int], edges: Iterable[Tuple[int, int]]) -> RootSystemLabel:
    """ADE type of a simply-laced diagram given by nodes and edges."""
    node_set = set(nodes)
    adjacency: Dict[int, Set[int]] = {v: set() for v in node_set}
    for a, b in edges:
        if a in node_set and b in node_set:
            adjacency[a].add(b)
            adjacency[b].add(a)
    components = []
    seen: Set[int] = set()
    for start in sorted(node_set):
        if start in seen:
            continue
        stack, comp = [start], []
        seen.add(start)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adjacency[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        components.append(_classify_tree(comp, adjacency))
    return RootSystemLabel(tuple(components))


def classify_subdiagram(subset: Iterable[int]) -> RootSystemLabel:
    """ADE type of the subdiagram of E10 spanned by nodes in `subset` (1-based)."""
    nodes = set(subset)
    if not nodes <= set(E10_NODES):
        raise ValueError(f"Nodes {sorted(nodes - set(E10_NODES))} are not in the E10 diagram")
    return classify_graph(nodes, E10_EDGES)


def root_system_type(lattice: GramLattice, roots: Sequence[LatticeVector]) -> RootSystemLabel:
    """ADE type of a finite root set, read off from its simple roots."""
    if not roots:
        return RootSystemLabel(())
    positive = [r for r in roots if next(x for x in r if x) > 0]
    pos_set = set(positive)
    simple = []
    for r in positive:
        if not any(tuple(a - b for a, b in zip(r, s)) in pos_set for s in positive if s != r):
            simple.append(r)
    edges = [
        (i, j)
        for i, j in combinations(range(len(simple)), 2)
        if inner(lattice, simple[i], simple[j]) != 0
    ]
    return classify_graph(range(len(simple)), edges)


def all_labels(max_rank: int) -> List[RootSystemLabel]:
    """Every ADE label (including the empty one) of rank at most max_rank."""
    kinds = [("A", r) for r in range(1, max_rank + 1)]
    kinds += [("D", r) for r in range(4, max_rank + 1)]
    kinds += [("E", r) for r in (6, 7, 8) if r <= max_rank]
    labels: List[RootSystemLabel] = []

    def build(start: int, remaining: int, chosen: List[Tuple[str, int]]) -> None:
        labels.append(RootSystemLabel(tuple(chosen)))
        for idx in range(start, len(kinds)):
            if kinds[idx][1] <= remaining:
                chosen.append(kinds[idx])
                build(idx, remaining - kinds[idx][1], chosen)
                chosen.pop()

    build(0, max_rank, [])
    return labels


def max_roots_without_e8(max_rank: int = 9) -> Tuple[int, RootSystemLabel]:
    """Largest root count among labels of bounded rank with no E8 component."""
    best: Optional[RootSystemLabel] = None
    for label in all_labels(max_rank):
        if label.contains("E", 8):
            continue
        if best is None or label.root_count > best.root_count:
            best = label
    assert best is not None
    return best.root_count, best


def vanishing_order_bound(genus_min_roots: int = 180, max_rank: int = 9) -> int:
    """(genus_min_roots - max roots without E8) / 2, rounded down."""
    count, _ = max_roots_without_e8(max_rank)
    return (genus_min_roots - count) // 2
