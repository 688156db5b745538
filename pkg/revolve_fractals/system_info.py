"""Diagnostic tables for the `info` command."""

from __future__ import annotations

import os
import platform
from importlib import metadata as importlib_metadata
from logging import Logger
from typing import Any, Dict, Iterable, Iterator, Tuple

from rich.console import Console
from rich.table import Table

_TRACKED_PREFIXES = ("REVOLVE_FRACTALS_",)
_LIBRARIES = ("numpy", "scipy", "pillow", "pyyaml", "typer", "rich")

Rows = Iterable[Tuple[str, str]]


def print_system_info(
    console: Console,
    logger: Logger,
    config_snapshot: Rows | None = None,
):
    """Print platform, libraries, tracked env vars and config."""
    logger.info("system info requested")
    platform_rows = [
        ("Platform", platform.system()),
        ("Platform Release", platform.release()),
        ("Machine", platform.machine()),
        ("Python Version", platform.python_version()),
        ("CPU Count", str(os.cpu_count() or 1)),
    ]
    _print_table(
        console,
        "System Information",
        ("Property", "Value"),
        "bold cyan",
        platform_rows + _library_versions(),
    )

    tracked_env = _collect_tracked_env_vars()
    if tracked_env:
        _print_table(
            console,
            "Environment Variable Settings",
            ("Variable", "Value"),
            "bold green",
            tracked_env,
        )
    else:
        console.print("[dim]No REVOLVE_FRACTALS_* overrides set.[/]")

    if config_snapshot:
        _print_table(
            console,
            "Config Snapshot",
            ("Key", "Value"),
            "bold magenta",
            config_snapshot,
        )
    console.print()


def _print_table(
    console: Console,
    title: str,
    columns: Tuple[str, str],
    header_style: str,
    rows: Rows,
) -> None:
    console.print(f"\n[bold underline]{title}:[/bold underline]")
    table = Table(show_header=True, header_style=header_style)
    table.add_column(columns[0], style="dim")
    table.add_column(columns[1])
    for key, value in rows:
        table.add_row(key, value)
    console.print(table)


def flatten_config(
    data: Dict[str, Any], prefix: str = ""
) -> Iterator[Tuple[str, str]]:
    """Yield ("section.key", value) rows for a nested mapping."""
    for key, value in data.items():
        path = f"{prefix}{key}"
        if isinstance(value, dict):
            yield from flatten_config(value, f"{path}.")
        else:
            yield path, str(value)


def _library_versions() -> list[Tuple[str, str]]:
    rows = []
    for name in _LIBRARIES:
        try:
            rows.append((name, importlib_metadata.version(name)))
        except importlib_metadata.PackageNotFoundError:
            rows.append((name, "<not installed>"))
    return rows


def _collect_tracked_env_vars() -> list[Tuple[str, str]]:
    return [
        (key, os.environ[key] or "<empty>")
        for key in sorted(os.environ)
        if key.startswith(_TRACKED_PREFIXES)
    ]
