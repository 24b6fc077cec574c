"""Configuration loading utilities for the unit disk embedding solver."""

from __future__ import annotations

import copy
import json
import os
from pathlib import Path
from typing import TYPE_CHECKING, Any, Dict, Iterable, Mapping, MutableMapping, Optional

from dotenv import load_dotenv

if TYPE_CHECKING:  # pragma: no cover
    from .embedding.feasibility import DomainParams
    from .graphs.generator import GeneratorConfig

load_dotenv()

DEFAULT_CONFIG: Dict[str, Any] = {
    "paths": {
        "datasets": "data/datasets",
        "results": "data/results",
        "logs": "logs",
    },
    "logging": {
        "level": "INFO",
        "file": "logs/udg.log",
    },
    "domain": {
        "d_min": 4.0,
        "d_adj": 10.26,
        "L": 50.0,
        "epsilon": 0.1,
        "iota": 1.0,
    },
    "generator": {
        "d": 1.0,
        "l_factor": 0.55,
        "max_retries": 1000,
        "n_values": [10, 20, 30, 40, 50, 60, 70, 80, 90, 100],
        "per_n": 20,
    },
    "initializers": {
        "fr": {
            "k": 7.0,
            "iterations": 1000,
        },
    },
    "training": {
        "epochs": 3000,
        "learning_rates": [0.01, 0.001, 0.0001],
        "dropout_probabilities": [0.3, 0.5, 0.7],
        "inits": ["scaling", "fr"],
        "workers": 0,
        "master_seed": 0,
    },
}

ENVIRONMENT_OVERRIDES: Mapping[tuple[str, ...], str] = {
    ("training", "workers"): "UDG_MAX_WORKERS",
    ("logging", "level"): "UDG_LOG_LEVEL",
    ("paths", "datasets"): "UDG_DATASET_DIR",
    ("paths", "results"): "UDG_RESULTS_DIR",
}


def _candidate_paths() -> Iterable[Path]:
    """Yield candidate configuration files ordered by precedence."""

    env_path = os.getenv("UDG_CONFIG_PATH")
    if env_path:
        yield Path(env_path).expanduser()

    root = Path(__file__).resolve().parent.parent
    yield root / "config.json"
    yield root / "config" / "config.json"
    yield root / "config" / "config.local.json"
    yield root / "config" / "config.example.json"


def _load_json(path: Path) -> Dict[str, Any]:
    with path.open("r", encoding="utf-8") as handle:
        return json.load(handle)


def _deep_update(base: MutableMapping[str, Any], updates: Mapping[str, Any]) -> MutableMapping[str, Any]:
    for key, value in updates.items():
        if isinstance(value, Mapping) and isinstance(base.get(key), MutableMapping):
            _deep_update(base[key], value)  # type: ignore[index]
        else:
            base[key] = value
    return base


def _set_nested(target: MutableMapping[str, Any], keys: Iterable[str], value: Any) -> None:
    keys = list(keys)
    cursor: MutableMapping[str, Any] = target
    for key in keys[:-1]:
        existing = cursor.get(key)
        if not isinstance(existing, MutableMapping):
            existing = {}
            cursor[key] = existing
        cursor = existing  # type: ignore[assignment]
    cursor[keys[-1]] = value


def _coerce_like(default: Any, raw: str) -> Any:
    if isinstance(default, bool):
        return raw.strip().lower() in {"1", "true", "yes", "on"}
    if isinstance(default, int):
        return int(raw)
    if isinstance(default, float):
        return float(raw)
    return raw


def load_config() -> Dict[str, Any]:
    """Return the merged configuration using defaults, files and environment."""

    config: Dict[str, Any] = copy.deepcopy(DEFAULT_CONFIG)

    # lowest precedence first so that earlier candidates override later ones
    for path in reversed(list(_candidate_paths())):
        if path.is_file():
            data = _load_json(path)
            if not isinstance(data, Mapping):
                raise ValueError(f"Konfigurationsdatei {path} enthält kein Objekt.")
            _deep_update(config, data)  # type: ignore[arg-type]

    for keys, env_key in ENVIRONMENT_OVERRIDES.items():
        value = os.getenv(env_key)
        if value:
            default: Any = DEFAULT_CONFIG
            for key in keys:
                default = default.get(key) if isinstance(default, Mapping) else None
            _set_nested(config, keys, _coerce_like(default, value))

    return config


def resolve_path(key: str, cfg: Optional[Mapping[str, Any]] = None) -> Path:
    """Resolve a configured path entry to an absolute :class:`Path`."""

    source = CFG if cfg is None else cfg
    path_value = source.get("paths", {}).get(key)
    if not path_value:
        raise KeyError(f"Pfad '{key}' ist in der Konfiguration nicht definiert.")
    return Path(path_value).expanduser().resolve()


def domain_params_from_config(cfg: Optional[Mapping[str, Any]] = None) -> "DomainParams":
    """Build the hardware feasibility domain from the ``domain`` section."""

    from .embedding.feasibility import DomainParams

    section = (CFG if cfg is None else cfg).get("domain", {})
    defaults = DEFAULT_CONFIG["domain"]
    return DomainParams(
        d_min=float(section.get("d_min", defaults["d_min"])),
        d_adj=float(section.get("d_adj", defaults["d_adj"])),
        L=float(section.get("L", defaults["L"])),
        epsilon=float(section.get("epsilon", defaults["epsilon"])),
        iota=float(section.get("iota", defaults["iota"])),
    )


def default_generator_config(
    n: int,
    seed: int,
    cfg: Optional[Mapping[str, Any]] = None,
) -> "GeneratorConfig":
    """Return the generator settings for ``n`` vertices (``l = l_factor·√n``, fixed ``d``)."""

    from .graphs.generator import GeneratorConfig

    section = (CFG if cfg is None else cfg).get("generator", {})
    defaults = DEFAULT_CONFIG["generator"]
    l_factor = float(section.get("l_factor", defaults["l_factor"]))
    return GeneratorConfig(
        n=n,
        l=l_factor * n ** 0.5,
        d=float(section.get("d", defaults["d"])),
        seed=seed,
        max_retries=int(section.get("max_retries", defaults["max_retries"])),
    )


CFG = load_config()

__all__ = [
    "CFG",
    "DEFAULT_CONFIG",
    "default_generator_config",
    "domain_params_from_config",
    "load_config",
    "resolve_path",
]
