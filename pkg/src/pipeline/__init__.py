"""I/O and orchestration helpers: logging, datasets, reports, rendering."""

from .logging_utils import get_logger, setup_logging

__all__ = ["get_logger", "setup_logging"]
