import json
import logging
from pathlib import Path

from config import get_settings
from constants import DEFAULT_MAX_K, DEFAULT_MIN_ROOTS, DEFAULT_MAX_ROOTS, EXIT_OK, FAITHFUL_MAX_ROOTS
from models.nef_witness import SearchConfig
from models.witness_repository import CheckpointRepository, WitnessRepository
from services.nef_search import dual_gram_checksum, search

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("search", help="Exhaustive nef-vector search in U+E8(-1)")
    parser.add_argument("--max-k", type=int, default=DEFAULT_MAX_K)
    parser.add_argument("--min-roots", type=int, default=DEFAULT_MIN_ROOTS)
    parser.add_argument("--max-roots", type=int, default=DEFAULT_MAX_ROOTS)
    parser.add_argument("--threads", type=int, default=None, help="Worker processes (K3LE_THREADS)")
    parser.add_argument("--witness-cap", type=int, default=None, help="Witnesses kept per k (K3LE_WITNESS_CAP)")
    parser.add_argument("--out", type=Path, default=None, help="Witness store, JSON lines")
    parser.add_argument("--resume", action="store_true", help="Continue from the checkpoint next to --out")
    parser.add_argument("--loose-d1", action="store_true", help="Double the d_1 range of every partition")
    parser.set_defaults(func=run)


def run(args) -> int:
    settings = get_settings()
    config = SearchConfig(
        max_k=args.max_k,
        min_roots=args.min_roots,
        max_roots=args.max_roots,
        witness_cap=args.witness_cap or settings.witness_cap,
        threads=args.threads or settings.threads,
    )
    if config.max_roots not in FAITHFUL_MAX_ROOTS:
        logger.warning(f"max_roots={config.max_roots}: only 8 and 10 feed the classification")
    out = args.out or Path(f"witnesses_max{config.max_k}_r{config.max_roots}.jsonl")
    checkpoint = CheckpointRepository(out.with_suffix(".checkpoint.json"))
    if args.loose_d1 and args.resume:
        raise ValueError("--loose-d1 runs cannot resume a checkpoint")
    result = search(config, checkpoint=checkpoint, resume=args.resume, loose_d1=args.loose_d1)
    WitnessRepository(out).save(config, result.witnesses, dual_gram_checksum(), result.complete)
    print(json.dumps(result.realizable))
    logger.info(f"{len(result.realizable)} realizable values of k written to {out}")
    return EXIT_OK
