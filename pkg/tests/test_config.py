import json

import pytest

from ultralogic.config import ConfigError, RunConfig, load_config


def test_defaults():
    cfg = load_config()
    assert cfg.truncation_order == 8
    assert cfg.precision == 50
    assert cfg.f == 2


def test_invariants():
    with pytest.raises(ConfigError):
        RunConfig(truncation_order=1)
    with pytest.raises(ConfigError):
        RunConfig(precision=10)
    with pytest.raises(ConfigError):
        RunConfig(f=0)


def test_file_and_overrides(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"truncation_order": 4, "f": 3}), encoding="utf-8")
    cfg = load_config(str(path))
    assert cfg.truncation_order == 4 and cfg.f == 3
    cfg2 = load_config(str(path), overrides={"f": 5, "precision": None})
    assert cfg2.f == 5 and cfg2.precision == 50


def test_env_override(tmp_path, monkeypatch):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"seed": 99}), encoding="utf-8")
    monkeypatch.setenv("ULTRALOGIC_CONFIG", str(path))
    assert load_config().seed == 99


def test_unknown_keys_rejected(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"bogus": 1}), encoding="utf-8")
    with pytest.raises(ConfigError):
        load_config(str(path))
