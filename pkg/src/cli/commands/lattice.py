import logging

from constants import EXIT_OK, EXIT_VERIFICATION_FAILED
from cli.commands.common import format_matrix, load_lattice
from cli.models import IsometryReport
from services.isometry_catalog import certify_catalog, target_lattice
from services.lattice_core import (
    find_isometry,
    find_isometry_by_hyperbolic_split,
    has_hyperbolic_block,
    has_nontrivial_overlattice,
)

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("isometry", help="Search for an isometry between two lattices")
    parser.add_argument("--left", help="Gram JSON file or lattice name")
    parser.add_argument("--right", help="Gram JSON file or lattice name")
    parser.add_argument(
        "--bound", type=int, default=None,
        help="Coefficient bound for the search box; with --catalog, the largest isotropic height",
    )
    parser.add_argument("--catalog", action="store_true", help="Certify every built-in rank-3 Gram matrix")
    parser.set_defaults(func=run_isometry)

    parser = subparsers.add_parser("overlattice", help="Check for nontrivial even overlattices")
    parser.add_argument("--k", type=int, nargs="*", default=[], help="Check U+<-2k> for these k")
    parser.add_argument("--lattice", default=None, help="Gram JSON file or lattice name")
    parser.set_defaults(func=run_overlattice)


def run_isometry(args) -> int:
    if args.catalog:
        failures = 0
        for entry, outcome in certify_catalog(args.bound):
            report = IsometryReport(name=entry.name, k=entry.k, found=outcome.found, reason=outcome.reason,
                                    matrix=[list(r) for r in outcome.matrix] if outcome.matrix else None)
            print(report.model_dump_json())
            failures += not outcome.found
        return EXIT_OK if failures == 0 else EXIT_VERIFICATION_FAILED
    if not args.left or not args.right:
        raise ValueError("isometry needs --left and --right, or --catalog")
    left, right = load_lattice(args.left), load_lattice(args.right)
    outcome = find_isometry(left, right, args.bound)
    if outcome.matrix is None and outcome.reason.startswith("not found") and has_hyperbolic_block(right):
        outcome = find_isometry_by_hyperbolic_split(left, right)
    if outcome.matrix is None:
        print(f"no isometry: {outcome.reason}")
        return EXIT_VERIFICATION_FAILED
    print("isometry (columns are images of the basis of --right):")
    print(format_matrix(outcome.matrix))
    return EXIT_OK


def run_overlattice(args) -> int:
    if args.lattice:
        lattices = [load_lattice(args.lattice)]
    elif args.k:
        lattices = [target_lattice(k) for k in args.k]
    else:
        raise ValueError("overlattice needs --k or --lattice")
    for lat in lattices:
        verdict = "has a nontrivial overlattice" if has_nontrivial_overlattice(lat) else "overlattice-free"
        print(f"{lat.label()}: {verdict}")
    return EXIT_OK
