import logging
import sys

from config import get_settings
from constants import LOG_FORMAT, SEARCH_LOGGER_NAME


# Setup global logging configuration
def setup_logging():
    """Configure logging for the whole application."""
    settings = get_settings()
    log_dir = settings.log_dir
    log_dir.mkdir(parents=True, exist_ok=True)

    logging.basicConfig(
        level=getattr(logging, settings.log_level, logging.INFO),
        format=LOG_FORMAT,
        handlers=[
            # Console handler for immediate feedback
            logging.StreamHandler(sys.stderr),
            # File handler for persistent logging
            logging.FileHandler(log_dir / "app.log"),
        ]
    )

    # Separate logger for search progress with its own file
    search_logger = logging.getLogger(SEARCH_LOGGER_NAME)
    if not search_logger.handlers:
        search_handler = logging.FileHandler(log_dir / "search.log")
        search_handler.setFormatter(logging.Formatter(LOG_FORMAT))
        search_logger.addHandler(search_handler)
        search_logger.setLevel(logging.INFO)


def main():
    """Main application entry point with error handling"""
    try:
        setup_logging()
    except ValueError as e:
        print(f"Invalid configuration: {e}", file=sys.stderr)
        sys.exit(2)
    logger = logging.getLogger(__name__)
    try:
        from cli.main import main as cli_main
    except ImportError as e:
        logger.error(f"Failed to import application modules: {e}")
        logger.error("Please check your dependencies")
        sys.exit(1)
    sys.exit(cli_main(sys.argv[1:]))


if __name__ == "__main__":
    main()
