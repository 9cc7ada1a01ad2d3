import json
import logging
from pathlib import Path

from cli.models import KStatusResponse
from constants import DEFAULT_MAX_K, EXIT_OK, EXIT_VERIFICATION_FAILED
from services.classification_service import (
    check_against_tables,
    classify,
    load_evidence,
    records_frame,
    render_markdown,
)

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("classify", help="Per-k classification from witness stores")
    parser.add_argument("--max-k", type=int, default=DEFAULT_MAX_K)
    parser.add_argument("--witnesses", type=Path, action="append", default=[],
                        help="Witness store; give once per root window")
    parser.add_argument("--out", type=Path, default=None)
    parser.add_argument("--format", choices=("json", "csv", "md"), default="json")
    parser.set_defaults(func=run)


def run(args) -> int:
    windows = load_evidence(args.witnesses)
    records = classify(args.max_k, windows)
    problems = check_against_tables(records, windows)
    for problem in problems:
        logger.error(problem)

    if args.format == "csv":
        text = records_frame(records).to_csv(index=False)
    elif args.format == "md":
        text = render_markdown(records, args.max_k)
    else:
        text = json.dumps([KStatusResponse.model_validate(r).model_dump() for r in records], indent=1) + "\n"

    if args.out:
        args.out.write_text(text)
        logger.info(f"Wrote {len(records)} records to {args.out}")
    else:
        print(text, end="")
    return EXIT_OK if not problems else EXIT_VERIFICATION_FAILED
