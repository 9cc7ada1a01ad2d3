from pathlib import Path

from cli.models import GramInput
from models.gram_lattice import GramLattice
from services.root_systems import builtin_gram


def load_lattice(spec: str) -> GramLattice:
    """A lattice from a Gram JSON file path or a built-in name such as 'U+E8(-1)'."""
    path = Path(spec)
    if spec.endswith(".json"):
        data = GramInput.model_validate_json(path.read_text())
        return GramLattice(tuple(tuple(row) for row in data.gram), data.name or path.stem)
    return builtin_gram(spec)


def format_matrix(matrix) -> str:
    return "\n".join("  [" + ", ".join(f"{x:>4}" for x in row) + "]" for row in matrix)
