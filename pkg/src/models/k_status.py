from dataclasses import dataclass, field
from typing import List, Optional

STATUS_GENERAL_TYPE = "general_type"
STATUS_KODAIRA_NONNEG = "kodaira_nonneg"
STATUS_UNIRATIONAL = "unirational"
STATUS_OPEN = "open"

STATUS_ORDER = (STATUS_GENERAL_TYPE, STATUS_KODAIRA_NONNEG, STATUS_UNIRATIONAL, STATUS_OPEN)


@dataclass
class KStatusRecord:
    """Classification of one k with the evidence behind it."""
    k: int
    status: str
    evidence: List[str] = field(default_factory=list)
    weight: Optional[int] = None
    root_type: Optional[str] = None
    partial: bool = False
    computed_witness: bool = False

    def __post_init__(self):
        if self.status not in STATUS_ORDER:
            raise ValueError(f"Unknown status {self.status!r}")
