import logging
import sys

from rational_fourfolds import config


def setup_logging(level: str | None = None) -> None:
    """Route log records to stderr; stdout is reserved for result documents."""
    logging.basicConfig(
        level=(level or config.LOG_LEVEL).upper(),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )
