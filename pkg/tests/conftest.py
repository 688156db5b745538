"""Shared fixtures: isolate every test from the user's config."""

import pytest

from revolve_fractals import cli


@pytest.fixture(autouse=True)
def isolated_config(monkeypatch, tmp_path):
    """Point config at a throwaway file that logs to the terminal."""
    config_file = tmp_path / "isolated.yaml"
    config_file.write_text(
        'config_version: "1.0"\nprocessing:\n  log_file: ""\n',
        encoding="utf-8",
    )
    monkeypatch.setenv("REVOLVE_FRACTALS_CONFIG", str(config_file))
    monkeypatch.delenv("REVOLVE_FRACTALS_THREADS", raising=False)
    monkeypatch.setattr(cli, "_CONFIG", None)
    monkeypatch.setattr(cli, "_LOGGER", None)
    return config_file
