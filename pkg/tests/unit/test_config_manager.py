"""Tests for ConfigManager loading, merging and editing."""

import stat

import pytest
import yaml
from rich.console import Console

from revolve_fractals.config_manager import CONFIG_ENV, ConfigManager


def _manager():
    return ConfigManager(Console(record=True))


def test_load_default_config_reads_package_file():
    manager = _manager()
    data = manager.load_default_config()

    assert manager.get_default_config_path().name == "default.yaml"
    assert data.get("config_version") == "1.0"
    assert set(data) >= {"generation", "render", "verify", "processing"}


def test_load_default_config_missing(monkeypatch, tmp_path):
    monkeypatch.setattr(
        ConfigManager,
        "get_default_config_path",
        lambda self: tmp_path / "absent.yaml",
    )
    with pytest.raises(FileNotFoundError):
        _manager().load_default_config()


def test_merge_is_deep():
    merged = _manager().merge_configs(
        {"a": {"x": 1, "y": 2}, "b": 3},
        {"a": {"y": 5}, "c": 4},
    )
    assert merged == {"a": {"x": 1, "y": 5}, "b": 3, "c": 4}


def test_env_override_points_at_missing_file(monkeypatch, tmp_path):
    monkeypatch.setenv(CONFIG_ENV, str(tmp_path / "nope.yaml"))
    monkeypatch.setattr(
        ConfigManager, "LOCAL_CONFIG_PATH", tmp_path / "local.yaml"
    )
    manager = _manager()
    assert manager.find_local_config() is None
    assert "non-existent" in manager.console.export_text()


def test_non_mapping_local_config_is_ignored(isolated_config):
    isolated_config.write_text("- just\n- a list\n", encoding="utf-8")
    manager = _manager()
    assert manager.load_local_config() == {}
    assert manager.get_config()["generation"]["depth"] == 14


def test_validate_config_reports_problems():
    manager = _manager()
    config = manager.merge_configs(
        manager.load_default_config(),
        {
            "config_version": "0.9",
            "generation": {"depth": -1},
            "render": "big",
        },
    )
    del config["verify"]
    errors = manager.validate_config(config)
    assert any("version mismatch" in e for e in errors)
    assert "generation.depth must be >= 0" in errors
    assert "'render' must be a dict" in errors
    assert "Missing 'verify' section" in errors


def test_default_config_is_valid():
    manager = _manager()
    assert manager.validate_config(manager.get_config()) == []


def test_create_template_and_set_value(isolated_config, tmp_path):
    target = tmp_path / "sub" / "local.yaml"
    manager = _manager()
    created = manager.create_local_config_template(target)
    assert created == target
    assert stat.S_IMODE(target.stat().st_mode) == 0o600
    assert yaml.safe_load(target.read_text()) == {
        "config_version": "1.0"
    }

    manager.set_config_value("render.size", "1024")
    manager.set_config_value("render.invert", "true")
    stored = yaml.safe_load(isolated_config.read_text())
    assert stored["render"] == {"size": 1024, "invert": True}
    assert manager.get_config()["render"]["size"] == 1024


def test_set_value_without_local_config(monkeypatch, tmp_path):
    monkeypatch.delenv(CONFIG_ENV, raising=False)
    monkeypatch.setattr(
        ConfigManager, "LOCAL_CONFIG_PATH", tmp_path / "local.yaml"
    )
    with pytest.raises(FileNotFoundError):
        _manager().set_config_value("render.size", "64")
