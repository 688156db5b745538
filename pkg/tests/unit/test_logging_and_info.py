"""Tests for the logger setup and the diagnostic tables."""

import logging

import pytest
from rich.console import Console
from rich.logging import RichHandler

from revolve_fractals.logger_config import CustomLogger
from revolve_fractals.system_info import flatten_config, print_system_info


@pytest.mark.parametrize("concurrent", [True, False])
def test_file_logger_writes_structured_lines(tmp_path, concurrent):
    target = tmp_path / "run.log"
    custom = CustomLogger(
        name="revolve_fractals.test_file",
        log_file=target,
        concurrent=concurrent,
    )
    custom.logger.info("hello %d", 7)
    custom.clear_log_handlers()

    assert custom.log_file == str(target)
    line = target.read_text(encoding="utf-8").strip()
    assert "[    INFO]" in line
    assert line.endswith("hello 7")


def test_console_logger_uses_rich():
    console = Console(record=True, width=200)
    custom = CustomLogger(
        name="revolve_fractals.test_console",
        level="DEBUG",
        console=console,
    )
    assert custom.log_file is None
    assert isinstance(custom.logger.handlers[0], RichHandler)
    assert custom.logger.level == logging.DEBUG
    assert not custom.logger.propagate
    custom.logger.debug("quiet please")
    assert "quiet please" in console.export_text()


def test_flatten_config():
    rows = list(flatten_config({"a": {"b": 1, "c": {"d": "x"}}, "e": 2}))
    assert rows == [("a.b", "1"), ("a.c.d", "x"), ("e", "2")]


def test_print_system_info(monkeypatch):
    monkeypatch.setenv("REVOLVE_FRACTALS_THREADS", "3")
    console = Console(record=True, width=200)
    print_system_info(
        console,
        logging.getLogger("revolve_fractals.test_info"),
        [("render.size", "512")],
    )
    text = console.export_text()
    assert "System Information" in text
    assert "REVOLVE_FRACTALS_THREADS" in text
    assert "render.size" in text
    assert "numpy" in text
