import json
import logging

from config import get_settings
from constants import DEFAULT_MAX_ROOTS, DEFAULT_MIN_ROOTS, EXIT_OK, EXIT_VERIFICATION_FAILED
from services.nef_search import large_k_witness

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("witness-large", help="Explicit data for the large-k construction")
    parser.add_argument("--k", type=int, required=True)
    parser.add_argument("--find-vector", action="store_true", help="Also search the E8 shell for v")
    parser.add_argument("--min-roots", type=int, default=DEFAULT_MIN_ROOTS)
    parser.add_argument("--max-roots", type=int, default=DEFAULT_MAX_ROOTS)
    parser.add_argument("--budget", type=int, default=None, help="Node budget (K3LE_NODE_BUDGET)")
    parser.set_defaults(func=run)


def run(args) -> int:
    budget = args.budget or get_settings().node_budget
    window = (args.min_roots, args.max_roots)
    witness = large_k_witness(args.k, args.find_vector, window, budget)
    payload = {"k": witness.k, "alpha": witness.alpha, "beta": witness.beta, "n": witness.n}
    if args.find_vector:
        payload.update(
            e8_vector=list(witness.e8_vector),
            l_coords=list(witness.l_coords),
            root_count=witness.root_count,
            reason=witness.reason,
        )
    print(json.dumps(payload))
    if args.find_vector and not witness.has_vector:
        if witness.reason == "budget exhausted":
            logger.error(f"Node budget {budget} exhausted before a vector l was found for k={args.k}")
        else:
            logger.error(f"The E8 shell of norm {2 * witness.n} has no vector with roots in {list(window)}")
        return EXIT_VERIFICATION_FAILED
    return EXIT_OK
