import json

import pytest

from src import config as config_module
from src.config import (
    DEFAULT_CONFIG,
    default_generator_config,
    domain_params_from_config,
    load_config,
    resolve_path,
)
from src.pipeline.utils import derive_seed


@pytest.fixture
def config_file(tmp_path, monkeypatch):
    path = tmp_path / "config.json"
    path.write_text(
        json.dumps({"domain": {"d_adj": 9.5}, "training": {"epochs": 42}, "paths": {"results": "out"}}),
        encoding="utf-8",
    )
    monkeypatch.setenv("UDG_CONFIG_PATH", str(path))
    for variable in ("UDG_MAX_WORKERS", "UDG_LOG_LEVEL", "UDG_DATASET_DIR", "UDG_RESULTS_DIR"):
        monkeypatch.delenv(variable, raising=False)
    return path


def test_file_values_override_defaults(config_file):
    cfg = load_config()
    assert cfg["training"]["epochs"] == 42
    assert cfg["training"]["learning_rates"] == DEFAULT_CONFIG["training"]["learning_rates"]
    params = domain_params_from_config(cfg)
    assert params.d_adj == 9.5
    assert params.d_min == DEFAULT_CONFIG["domain"]["d_min"]


def test_environment_overrides_file(config_file, monkeypatch):
    monkeypatch.setenv("UDG_MAX_WORKERS", "4")
    monkeypatch.setenv("UDG_RESULTS_DIR", "elsewhere")
    cfg = load_config()
    assert cfg["training"]["workers"] == 4
    assert resolve_path("results", cfg).name == "elsewhere"


def test_every_config_file_is_merged(tmp_path, monkeypatch):
    local = tmp_path / "config.local.json"
    local.write_text(json.dumps({"domain": {"d_adj": 9.5, "L": 40.0}}), encoding="utf-8")
    example = tmp_path / "config.example.json"
    example.write_text(json.dumps({"domain": {"d_adj": 8.0}, "training": {"epochs": 7}}), encoding="utf-8")
    monkeypatch.setattr(config_module, "_candidate_paths", lambda: iter([tmp_path / "missing.json", local, example]))
    monkeypatch.delenv("UDG_MAX_WORKERS", raising=False)

    cfg = load_config()

    assert cfg["domain"]["d_adj"] == 9.5
    assert cfg["domain"]["L"] == 40.0
    assert cfg["training"]["epochs"] == 7
    assert cfg["domain"]["d_min"] == DEFAULT_CONFIG["domain"]["d_min"]


def test_non_object_config_file(tmp_path, monkeypatch):
    broken = tmp_path / "config.json"
    broken.write_text("[1, 2]", encoding="utf-8")
    monkeypatch.setattr(config_module, "_candidate_paths", lambda: iter([broken]))
    with pytest.raises(ValueError):
        load_config()


def test_unknown_path_key():
    with pytest.raises(KeyError):
        resolve_path("nowhere", {"paths": {}})


def test_generator_side_grows_with_sqrt_n():
    cfg = default_generator_config(100, seed=1, cfg={"generator": {"l_factor": 0.5, "d": 1.0}})
    assert cfg.l == pytest.approx(5.0)
    assert cfg.d == 1.0


def test_derived_seeds_are_stable_and_distinct():
    assert derive_seed(0, 1) == derive_seed(0, 1)
    assert len({derive_seed(0, index) for index in range(50)}) == 50
    assert derive_seed(1, 2, 3) != derive_seed(1, 3, 2)
