import logging
from pathlib import Path

from constants import EXIT_OK, EXIT_VERIFICATION_FAILED
from models.witness_repository import WitnessRepository
from services.nef_search import dual_gram_checksum, verify_witness

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("verify", help="Re-check every witness in a store from scratch")
    parser.add_argument("--witnesses", type=Path, required=True)
    parser.set_defaults(func=run)


def run(args) -> int:
    repo = WitnessRepository(args.witnesses)
    header = repo.load_header()
    if header.dual_gram_sha256 != dual_gram_checksum():
        logger.error(f"{args.witnesses} was produced with a different dual Gram matrix")
        return EXIT_VERIFICATION_FAILED
    checked = failed = 0
    for line_no, witness in repo.iter_witnesses():
        checked += 1
        if not verify_witness(witness):
            failed += 1
            logger.error(f"{repo.evidence_ref(line_no)}: witness for k={witness.k} failed")
    print(f"verified {checked - failed}/{checked} witnesses")
    return EXIT_OK if failed == 0 else EXIT_VERIFICATION_FAILED
