"""Run manifests: which command produced which files from which inputs.

Every output file is listed in exactly one manifest. Commands that rewrite
files another run already owns (``report`` rebuilding a sweep's CSVs)
update that run's manifest instead of writing a second one.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Optional

from .. import __version__
from .logging_utils import get_logger
from .utils import read_json, write_json


logger = get_logger("manifest")

MANIFEST_SUFFIX = ".manifest.json"


def _utc_now() -> str:
    return datetime.now(tz=timezone.utc).isoformat()


@dataclass
class RunManifest:
    command: str
    config: Dict[str, Any] = field(default_factory=dict)
    dataset: Optional[str] = None
    outputs: List[str] = field(default_factory=list)
    master_seed: Optional[int] = None
    version: str = __version__
    timestamp: str = field(default_factory=_utc_now)
    updates: List[Dict[str, Any]] = field(default_factory=list)

    def add_output(self, path: Path) -> None:
        if str(path) not in self.outputs:
            self.outputs.append(str(path))

    def record_update(self, command: str, outputs: Iterable[Path], **details: Any) -> None:
        """Note that ``command`` rewrote ``outputs`` owned by this manifest."""

        written = [str(path) for path in outputs]
        for path in written:
            self.add_output(Path(path))
        self.updates.append({"command": command, "timestamp": _utc_now(), "outputs": written, **details})

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, payload: Mapping[str, Any]) -> "RunManifest":
        known = {name: payload[name] for name in cls.__dataclass_fields__ if name in payload}
        return cls(**known)

    @classmethod
    def load(cls, path: Path) -> "RunManifest":
        payload = read_json(path)
        if not isinstance(payload, Mapping) or "command" not in payload:
            raise ValueError(f"{path} ist kein gültiges Manifest")
        return cls.from_dict(payload)

    @staticmethod
    def path_for(primary: Path) -> Path:
        """``result.json`` → ``result.manifest.json`` next to the primary output."""

        primary = Path(primary)
        return primary.with_name(f"{primary.stem}{MANIFEST_SUFFIX}")

    def write(self, primary: Path) -> Path:
        path = write_json(self.path_for(primary), self.to_dict())
        logger.debug("Manifest geschrieben: %s", path)
        return path


__all__ = ["MANIFEST_SUFFIX", "RunManifest"]
