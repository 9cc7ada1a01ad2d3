from typing import Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, field_validator, model_validator


class GramInput(BaseModel):
    rank: int
    gram: List[List[int]]
    name: Optional[str] = None

    @model_validator(mode="after")
    def check_shape(self) -> "GramInput":
        if len(self.gram) != self.rank or any(len(row) != self.rank for row in self.gram):
            raise ValueError(f"gram must be {self.rank}x{self.rank}")
        return self


class SearchConfigRecord(BaseModel):
    max_k: int
    min_roots: int
    max_roots: int
    witness_cap: int


class WitnessHeader(BaseModel):
    type: Literal["header"] = "header"
    config: SearchConfigRecord
    dual_gram_sha256: str
    realizable_count: int = 0
    complete: bool = True


class WitnessRecord(BaseModel):
    type: Literal["witness"] = "witness"
    k: int
    d_coeffs: List[int]
    c_coords: List[int]
    root_type: str
    root_count: int
    subdiagram: List[int]
    primitive: bool = True

    model_config = ConfigDict(from_attributes=True)

    @field_validator("d_coeffs", "c_coords")
    @classmethod
    def check_length(cls, value: List[int]) -> List[int]:
        if len(value) != 10:
            raise ValueError(f"expected 10 coordinates, got {len(value)}")
        return value


class CheckpointRecord(BaseModel):
    config: SearchConfigRecord
    dual_gram_sha256: str
    completed: List[Tuple[int, int]] = []
    partial: Dict[int, List[Tuple[int, List[int]]]] = {}


class KStatusResponse(BaseModel):
    k: int
    status: str
    evidence: List[str] = []
    weight: Optional[int] = None
    root_type: Optional[str] = None
    partial: bool = False
    computed_witness: bool = False

    model_config = ConfigDict(from_attributes=True)


class IsometryReport(BaseModel):
    name: str
    k: int
    found: bool
    reason: str
    matrix: Optional[List[List[int]]] = None
