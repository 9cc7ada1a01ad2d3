import json
import os
import sys
sys.path.append(os.path.dirname(os.path.dirname(__file__)))

from services.nef_search import DUAL_GRAM_RESOURCE, dual_basis
from services.root_systems import e10_lattice

# Recompute the dual Gram matrix of the E10 diagram and overwrite the frozen copy
basis = dual_basis(e10_lattice())
payload = {
    "description": "Gram matrix of the dual basis D_1..D_10 of the E10 diagram basis C_1..C_10; "
                   "row i holds D_i in C-coordinates",
    "dual_gram": [list(row) for row in basis.gram],
}

with open(DUAL_GRAM_RESOURCE) as f:
    previous = json.load(f)["dual_gram"]

if previous == payload["dual_gram"]:
    print(f"{DUAL_GRAM_RESOURCE.name} is up to date")
else:
    with open(DUAL_GRAM_RESOURCE, "w") as f:
        json.dump(payload, f, indent=2)
        f.write("\n")
    print(f"Rewrote {DUAL_GRAM_RESOURCE.name}")

print("Dual norms:", [basis.gram[i][i] for i in range(len(basis.gram))])
