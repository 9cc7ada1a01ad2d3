import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from cli.commands import classify, lattice, search, theta, verify, witness_large
from constants import EXIT_USAGE, EXIT_VERIFICATION_FAILED
from models.errors import DimensionMismatchError, LatticeError, UnknownLatticeError

logger = logging.getLogger(__name__)

COMMAND_MODULES = (search, verify, theta, lattice, witness_large, classify)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="k3le",
        description="Lattice computations for U+E8(-1) and the moduli of K3 surfaces of degree 2k.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for module in COMMAND_MODULES:
        module.register(subparsers)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run the chosen command and map failures to exit codes."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except (UnknownLatticeError, DimensionMismatchError, ValidationError, FileNotFoundError) as e:
        logger.error(f"Invalid input: {e}")
        return EXIT_USAGE
    except LatticeError as e:
        logger.error(f"{args.command} failed: {e}")
        return EXIT_VERIFICATION_FAILED
    except ValueError as e:
        logger.error(f"Invalid input: {e}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
