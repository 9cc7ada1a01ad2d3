import logging
from pathlib import Path

from config import get_settings
from constants import EXIT_OK, EXIT_VERIFICATION_FAILED
from services.theta_counts import (
    analytic_constants,
    analytic_threshold,
    independent_shell_count,
    mass_identity_check,
    rep_number_table,
    scan_inequality,
)

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("theta", help="Representation numbers of a root lattice")
    parser.add_argument("--lattice", default="E7")
    parser.add_argument("--max-n", type=int, default=10)
    parser.add_argument("--out", type=Path, default=None, help="CSV output")
    parser.add_argument("--budget", type=int, default=None, help="Node budget (K3LE_NODE_BUDGET)")
    parser.add_argument("--cross-check", action="store_true", help="Recount with a coordinate model")
    parser.set_defaults(func=run_theta)

    parser = subparsers.add_parser("inequality", help="Scan 2 N_E7 > 28 N_E6 + 63 N_D6")
    parser.add_argument("--max-n", type=int, default=30)
    parser.add_argument("--budget", type=int, default=None)
    parser.set_defaults(func=run_inequality)

    parser = subparsers.add_parser("threshold", help="Least n for which the analytic bounds imply the inequality")
    parser.set_defaults(func=run_threshold)

    parser = subparsers.add_parser("mass-check", help="Check the mass identity of the genus of D10(-1)")
    parser.set_defaults(func=run_mass_check)


def run_theta(args) -> int:
    budget = args.budget or get_settings().node_budget
    table = rep_number_table(args.lattice, args.max_n, budget)
    if args.out:
        table.to_csv(args.out)
    else:
        print(table.to_frame().to_string(index=False))
    if args.cross_check:
        for n, count in enumerate(table.counts):
            other = independent_shell_count(args.lattice, n)
            if other != count:
                logger.error(f"{args.lattice} norm {2 * n}: {count} by enumeration, {other} by coordinates")
                return EXIT_VERIFICATION_FAILED
        print(f"cross-check passed for {args.lattice} up to n={args.max_n}")
    return EXIT_OK


def run_inequality(args) -> int:
    budget = args.budget or get_settings().node_budget
    first, results = scan_inequality(args.max_n, budget)
    for r in results:
        print(f"n={r.n:4d}  2*N_E7={r.lhs:>12}  28*N_E6+63*N_D6={r.rhs:>12}  {'holds' if r.holds else '-'}")
    print(f"first n: {first if first is not None else f'none up to {args.max_n}'}")
    return EXIT_OK


def run_threshold(args) -> int:
    for name, value in analytic_constants().items():
        print(f"{name} = {float(value)}")
    print(f"threshold = {analytic_threshold()}")
    return EXIT_OK


def run_mass_check(args) -> int:
    report = mass_identity_check()
    print(f"sum 1/|O(L)| = {report.lhs}")
    print(f"mass = {report.rhs}, formula = {report.formula}")
    print("identity holds" if report.holds else "identity FAILS")
    return EXIT_OK if report.holds else EXIT_VERIFICATION_FAILED
