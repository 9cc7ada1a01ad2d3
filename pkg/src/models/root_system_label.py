import re
from collections import Counter
from dataclasses import dataclass
from typing import Tuple

from models.errors import UnknownLatticeError

_FAMILY_ORDER = {"E": 0, "D": 1, "A": 2}
_COMPONENT_RE = re.compile(r"^(\d*)([ADE])(\d+)$")


def component_root_count(family: str, rank: int) -> int:
    """Number of roots of an irreducible ADE root system."""
    if family == "A":
        return rank * (rank + 1)
    if family == "D":
        return 2 * rank * (rank - 1)
    if family == "E":
        return {6: 72, 7: 126, 8: 240}[rank]
    raise UnknownLatticeError(f"Unknown ADE family {family!r}")


def _check_component(family: str, rank: int) -> None:
    if family == "A" and rank < 1:
        raise UnknownLatticeError(f"A{rank} is not a root system")
    if family == "D" and rank < 4:
        raise UnknownLatticeError(f"D{rank} is not a root system, use A-type names")
    if family == "E" and rank not in (6, 7, 8):
        raise UnknownLatticeError(f"E{rank} is not a finite root system")


@dataclass(frozen=True)
class RootSystemLabel:
    """Multiset of ADE components, stored in canonical order."""
    components: Tuple[Tuple[str, int], ...] = ()

    def __post_init__(self):
        for family, rank in self.components:
            _check_component(family, rank)
        ordered = tuple(sorted(self.components, key=lambda c: (_FAMILY_ORDER[c[0]], -c[1])))
        object.__setattr__(self, "components", ordered)

    @property
    def rank(self) -> int:
        return sum(rank for _, rank in self.components)

    @property
    def root_count(self) -> int:
        return sum(component_root_count(f, r) for f, r in self.components)

    def contains(self, family: str, rank: int) -> bool:
        return (family, rank) in self.components

    def __add__(self, other: "RootSystemLabel") -> "RootSystemLabel":
        return RootSystemLabel(self.components + other.components)

    def __str__(self) -> str:
        if not self.components:
            return "0"
        counts = Counter(self.components)
        seen = []
        for comp in self.components:
            if comp not in seen:
                seen.append(comp)
        parts = []
        for family, rank in seen:
            mult = counts[(family, rank)]
            parts.append(f"{mult if mult > 1 else ''}{family}{rank}")
        return "+".join(parts)

    @classmethod
    def parse(cls, text: str) -> "RootSystemLabel":
        """Parse labels such as 'A2+2A1' or 'E8'; '0' is the empty system."""
        text = text.replace(" ", "").replace("⊕", "+")
        if text in ("", "0"):
            return cls(())
        components = []
        for part in text.split("+"):
            match = _COMPONENT_RE.match(part)
            if not match:
                raise UnknownLatticeError(f"Cannot parse root system component {part!r}")
            mult = int(match.group(1) or 1)
            components.extend([(match.group(2), int(match.group(3)))] * mult)
        return cls(tuple(components))
