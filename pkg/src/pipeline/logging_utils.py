"""Utility helpers for consistent solver logging."""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Optional, Union

from ..config import CFG


ROOT_LOGGER = "udg"

_INITIALIZED = False


def setup_logging(
    log_file: Optional[Union[str, Path]] = None,
    level: Optional[Union[int, str]] = None,
) -> None:
    """Configure the shared ``udg`` logger for CLI commands and batch runs.

    The configuration is idempotent so repeated calls will not add duplicate
    handlers. Logs are sent both to stderr (for CLI visibility) and to a
    file inside ``logs/`` for later diagnostics.
    """

    global _INITIALIZED
    if _INITIALIZED:
        return

    logger = logging.getLogger(ROOT_LOGGER)
    if logger.handlers:
        _INITIALIZED = True
        return

    logging_cfg = CFG.get("logging", {})
    if level is None:
        level = logging_cfg.get("level", "INFO")
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
        if not isinstance(level, int):
            level = logging.INFO
    if log_file is None:
        log_file = logging_cfg.get("file", "logs/udg.log")

    logger.setLevel(level)
    logger.propagate = False

    formatter = logging.Formatter(
        "%(asctime)s [%(levelname)s] %(name)s: %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )

    stream_handler = logging.StreamHandler()
    stream_handler.setFormatter(formatter)
    logger.addHandler(stream_handler)

    log_path = Path(log_file)
    try:
        log_path.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_path, encoding="utf-8")
    except OSError:
        logger.warning("Logdatei %s kann nicht geöffnet werden, protokolliere nur auf stderr", log_path)
    else:
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    _INITIALIZED = True


def get_logger(name: str) -> logging.Logger:
    """Return a child logger below the common ``udg`` namespace."""

    if not name.startswith(ROOT_LOGGER):
        name = f"{ROOT_LOGGER}.{name}"
    return logging.getLogger(name)


__all__ = ["ROOT_LOGGER", "get_logger", "setup_logging"]
