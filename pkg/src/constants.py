"""
Application-wide constants to avoid duplication and ensure consistency.
"""
from fractions import Fraction

# Logging configuration
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
SEARCH_LOGGER_NAME = "nef_search"

# CLI exit codes
EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2

# E10 Dynkin diagram: C1-C2-...-C7, C7-C8, C7-C9, C9-C10 (1-based node labels)
E10_NODES = tuple(range(1, 11))
E10_EDGES = (
    (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7),
    (7, 8), (7, 9), (9, 10),
)

# Search defaults
DEFAULT_MAX_K = 4899
LARGE_K_THRESHOLD = 4900
DEFAULT_MIN_ROOTS = 2
DEFAULT_MAX_ROOTS = 8
FAITHFUL_MAX_ROOTS = (8, 10)
DEFAULT_WITNESS_CAP = 4
CHECKPOINT_INTERVAL_SECONDS = 30.0

# Enumeration budgets
DEFAULT_NODE_BUDGET = 10 ** 7
DEFAULT_ISOMETRY_BOUND = 12
HIGH_RANK_ISOMETRY_BOUND = 3
MAX_ISOMETRY_BOX = 5_000_000
ISOTROPIC_START_HEIGHT = 8
MAX_ISOTROPIC_HEIGHT = 512
DEFAULT_GROUP_ORDER_BOUND = 64

# E8 shell threshold for the large-k construction
E8_SHELL_THRESHOLD = 952
LARGE_K_ALPHA_OFFSET = 6

# Quasi-pullback weights
BASE_WEIGHT = 12
CRITICAL_WEIGHT = 17

# Analytic representation-number bounds, kept as printed decimals
ANALYTIC_CONSTANTS = {
    "e7_lower": "123.8",
    "e6_upper": "103.69",
    "d6_upper": "75.13",
}
E6_SYSTEMS_IN_E8_COMPLEMENT = 28
A1_SYSTEMS_IN_E7 = 63

# Mass identity for the genus of E8(-1)+2A1(-1)
MASS_ORTHOGONAL_GROUP_ORDERS = (3715891200, 5573836800)
MASS_TOTAL = Fraction(1, 2229534720)
MASS_FORMULA_FACTORS = (5, 2 ** 8, 24, 1814400)

# Realizable-k data for the two root windows below the large-k threshold
GENERAL_TYPE_START = 208
GENERAL_TYPE_GAPS = frozenset({211, 219})
GENERAL_TYPE_SPORADIC = frozenset({170, 185, 186, 188, 190, 194, 200, 202, 204, 206})
NONNEG_START = 164
NONNEG_GAPS = frozenset({169, 171, 175})
NONNEG_SPORADIC = frozenset({140, 146, 150, 152, 154, 155, 158, 160, 162})
GENERAL_TYPE_ALL_FROM = 220
NONNEG_ALL_FROM = 176

# Unirational moduli: k < 11 plus the sporadic list, and k = 28 from an external result
UNIRATIONAL_K = frozenset(range(1, 11)) | frozenset(
    {13, 16, 17, 19, 21, 25, 26, 29, 31, 34, 36, 37, 39, 41, 43, 49, 59, 61, 64}
)
UNIRATIONAL_EXTERNAL_K = frozenset({28})

# Evidence tags used in classification records
EVIDENCE_LARGE_K = "large-k-construction"
EVIDENCE_UNIRATIONAL = "unirational-list"
EVIDENCE_UNIRATIONAL_EXTERNAL = "unirational-external-BH17"
