import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv

from constants import DEFAULT_NODE_BUDGET, DEFAULT_WITNESS_CAP

# Load environment variables
load_dotenv()

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Settings:
    """Runtime settings resolved from the environment."""
    threads: int
    log_dir: Path
    log_level: str
    node_budget: int
    witness_cap: int


# Global variable for lazy initialization
_settings: Optional[Settings] = None


def _positive_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}")
    if value <= 0:
        raise ValueError(f"{name} must be positive, got {value}")
    return value


def get_settings() -> Settings:
    """Get or create the settings object with lazy initialization"""
    global _settings

    if _settings is not None:
        return _settings

    log_dir = os.getenv("K3LE_LOG_DIR")
    _settings = Settings(
        threads=_positive_int("K3LE_THREADS", 1),
        log_dir=Path(log_dir) if log_dir else Path(__file__).parent.parent / "logs",
        log_level=os.getenv("K3LE_LOG_LEVEL", "INFO").upper(),
        node_budget=_positive_int("K3LE_NODE_BUDGET", DEFAULT_NODE_BUDGET),
        witness_cap=_positive_int("K3LE_WITNESS_CAP", DEFAULT_WITNESS_CAP),
    )
    logger.debug(f"Resolved settings: {_settings}")
    return _settings


def reset_settings() -> None:
    """Drop the cached settings so the next call re-reads the environment."""
    global _settings
    _settings = None
