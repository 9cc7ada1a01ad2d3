"""Rank-3 Gram matrices claimed isometric to U+<-2k>, with a certifier."""
import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple

from models.gram_lattice import GramLattice, IntMatrix
from constants import MAX_ISOTROPIC_HEIGHT
from services.lattice_core import IsometryOutcome, find_isometry_by_hyperbolic_split, has_nontrivial_overlattice
from services.root_systems import builtin_gram

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CatalogEntry:
    family: str
    k: int
    gram: IntMatrix

    @property
    def name(self) -> str:
        return f"{self.family} k={self.k}"

    def lattice(self) -> GramLattice:
        return GramLattice(self.gram, self.name)


QUARTIC = {
    10: ((4, 1, 1), (1, -2, 0), (1, 0, -2)),
    13: ((4, 2, 1), (2, -2, 0), (1, 0, -2)),
    16: ((4, 3, 1), (3, -2, 2), (1, 2, -2)),
    19: ((4, 3, 1), (3, -2, 1), (1, 1, -2)),
    26: ((4, 3, 3), (3, -2, 0), (3, 0, -2)),
}
NODAL_QUARTIC = {
    7: ((4, 1, 0), (1, -2, 1), (0, 1, -2)),
    17: ((4, 3, 0), (3, -2, 0), (0, 0, -2)),
}
QUADRIC_CUBIC = {
    9: ((6, 2, 1), (2, -2, 2), (1, 2, -2)),
    21: ((6, 2, 2), (2, -2, 1), (2, 1, -2)),
    25: ((6, 3, 2), (3, -2, 2), (2, 2, -2)),
    29: ((6, 4, 1), (4, -2, 0), (1, 0, -2)),
    37: ((6, 4, 2), (4, -2, 1), (2, 1, -2)),
}
THREE_QUADRICS = {
    31: ((8, 3, 2), (3, -2, 1), (2, 1, -2)),
    34: ((8, 3, 3), (3, -2, 0), (3, 0, -2)),
    36: ((8, 3, 3), (3, -2, 2), (3, 2, -2)),
    39: ((8, 3, 3), (3, -2, 1), (3, 1, -2)),
    41: ((8, 4, 3), (4, -2, 3), (3, 3, -2)),
    43: ((8, 5, 1), (5, -2, 1), (1, 1, -2)),
    49: ((8, 4, 3), (4, -2, 2), (3, 2, -2)),
    59: ((8, 5, 3), (5, -2, 3), (3, 3, -2)),
    61: ((8, 5, 3), (5, -2, 1), (3, 1, -2)),
    64: ((8, 5, 3), (5, -2, 2), (3, 2, -2)),
}
DOUBLE_PLANE = {
    5: ((2, 1, 0), (1, -2, 0), (0, 0, -2)),
}

FAMILIES = {
    "quartic": QUARTIC,
    "nodal-quartic": NODAL_QUARTIC,
    "quadric-cubic": QUADRIC_CUBIC,
    "three-quadrics": THREE_QUADRICS,
    "double-plane": DOUBLE_PLANE,
}


def elliptic_section_gram(k: int) -> IntMatrix:
    """Fiber, section and a section of height 2k-2."""
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    return ((0, 1, 1), (1, -2, k - 2), (1, k - 2, -2))


def hyperelliptic_quartic_gram(k: int) -> IntMatrix:
    if k < 4 or k % 2:
        raise ValueError(f"k must be even and at least 4, got {k}")
    d = (k - 4) // 2
    return ((0, 2, 1), (2, 0, d), (1, d, -2))


def target_lattice(k: int) -> GramLattice:
    """U+<-2k>."""
    return builtin_gram(f"U+<{-2 * k}>")


def catalog_entries(
    elliptic_ks: Iterable[int] = range(2, 11), hyperelliptic_ks: Iterable[int] = (4, 6, 8, 10)
) -> List[CatalogEntry]:
    entries = [CatalogEntry(family, k, gram) for family, table in FAMILIES.items() for k, gram in sorted(table.items())]
    entries += [CatalogEntry("elliptic-section", k, elliptic_section_gram(k)) for k in elliptic_ks]
    entries += [CatalogEntry("hyperelliptic-quartic", k, hyperelliptic_quartic_gram(k)) for k in hyperelliptic_ks]
    return entries


def certify(entry: CatalogEntry, max_height: Optional[int] = None) -> IsometryOutcome:
    """Isometry onto U+<-2k> built from a hyperbolic plane inside the entry."""
    height = max_height or MAX_ISOTROPIC_HEIGHT
    outcome = find_isometry_by_hyperbolic_split(entry.lattice(), target_lattice(entry.k), height)
    logger.info(f"{entry.name}: {outcome.reason}")
    return outcome


def certify_catalog(max_height: Optional[int] = None) -> List[Tuple[CatalogEntry, IsometryOutcome]]:
    return [(entry, certify(entry, max_height)) for entry in catalog_entries()]


def overlattice_free_values(ks: Iterable[int]) -> List[int]:
    """Values of k for which U+<-2k> has no nontrivial even overlattice."""
    return [k for k in ks if not has_nontrivial_overlattice(target_lattice(k))]
