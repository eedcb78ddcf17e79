"""Logging setup shared by the CLI and the HTTP app."""

import logging
import sys

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def configure_logging(level: str = "WARNING") -> None:
    """Send toolkit logs to stderr; stdout is reserved for structured output."""
    root = logging.getLogger("src")
    root.setLevel(level.upper())
    if not any(getattr(h, "_qd_handler", False) for h in root.handlers):
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handler._qd_handler = True
        root.addHandler(handler)
