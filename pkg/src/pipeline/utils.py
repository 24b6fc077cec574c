"""Utility helpers shared across pipeline modules."""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path
from typing import Any

import numpy as np


def ensure_directory(path: Path) -> Path:
    """Create ``path`` (and parents) if necessary and return it."""

    path.mkdir(parents=True, exist_ok=True)
    return path


def derive_seed(*entropy: int) -> int:
    """Derive an independent 32-bit seed from a master seed and indices."""

    sequence = np.random.SeedSequence([int(value) for value in entropy])
    return int(sequence.generate_state(1, dtype=np.uint32)[0])


def atomic_write_text(path: Path, content: str) -> Path:
    """Write ``content`` to ``path`` via a temporary sibling file.

    Either the complete file appears or nothing does; a failed write never
    leaves a truncated output behind.
    """

    path = Path(path)
    handle = tempfile.NamedTemporaryFile(
        "w",
        encoding="utf-8",
        dir=path.parent,
        prefix=f".{path.name}.",
        suffix=".tmp",
        delete=False,
    )
    try:
        with handle:
            handle.write(content)
        os.replace(handle.name, path)
    except BaseException:
        Path(handle.name).unlink(missing_ok=True)
        raise
    return path


def write_json(path: Path, payload: Any) -> Path:
    """Serialize ``payload`` as indented UTF-8 JSON, atomically."""

    return atomic_write_text(path, json.dumps(payload, ensure_ascii=False, indent=2) + "\n")


def read_json(path: Path) -> Any:
    with Path(path).open("r", encoding="utf-8") as handle:
        return json.load(handle)
