"""Application configuration loading and helpers."""

import os
from importlib import metadata as importlib_metadata
from pathlib import Path
from typing import Any, Dict, Optional

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from rich.console import Console

from .config_manager import ConfigManager
from .config_schema import (
    GenerationConfig,
    ProcessingConfig,
    RenderConfig,
    VerifyConfig,
)

THREADS_ENV = "REVOLVE_FRACTALS_THREADS"


class Config:
    """Application configuration with YAML backend.

    Configuration sources, later ones winning:
    1. YAML files (bundled default.yaml + local overrides)
    2. REVOLVE_FRACTALS_THREADS for the worker count
    3. Command-line flags, applied by the CLI
    """

    def __init__(
        self, config_manager: Optional[ConfigManager] = None
    ):
        """Initialize configuration from YAML."""
        self._console = Console(stderr=True)
        self._config_manager = config_manager or ConfigManager(
            self._console
        )

        self._version = self._load_version()

        self._yaml_config: Dict[str, Any] = (
            self._config_manager.get_config()
        )

        errors = self._config_manager.validate_config(
            self._yaml_config
        )
        if errors:
            self._console.print(
                "[bold yellow]Configuration "
                "validation warnings:[/]"
            )
            for error in errors:
                self._console.print(f"  - {error}")

        self._generation = GenerationConfig.from_dict(
            self._section("generation")
        )
        self._render = RenderConfig.from_dict(self._section("render"))
        self._verify = VerifyConfig.from_dict(self._section("verify"))
        self._processing = ProcessingConfig.from_dict(
            self._section("processing")
        )

    @property
    def VERSION(self) -> str:
        """Return application version."""
        return self._version

    @property
    def DEFAULT_DEPTH(self) -> int:
        return self._generation.depth

    @property
    def VERIFY_DEPTH(self) -> int:
        return self._generation.verify_depth

    @property
    def DEDUP_GRID(self) -> float:
        return self._generation.dedup_grid

    @property
    def RADIX_MAX_STEPS(self) -> int:
        return self._generation.radix_max_steps

    @property
    def RENDER_SIZE(self) -> int:
        return self._render.size

    @property
    def RENDER_PADDING(self) -> float:
        return self._render.padding

    @property
    def RENDER_INVERT(self) -> bool:
        return self._render.invert

    @property
    def EXACT_TOLERANCE(self) -> float:
        return self._verify.exact_tolerance

    @property
    def KIKO_SAMPLES(self) -> int:
        return self._verify.kiko_samples

    @property
    def KIKO_DEPTH(self) -> int:
        return self._verify.kiko_depth

    @property
    def THREADS(self) -> int:
        """Configured worker count; 0 means one per CPU."""
        return self._processing.threads

    @property
    def LOG_LEVEL(self) -> str:
        """Return log level from YAML."""
        return self._processing.log_level

    @property
    def LOG_FILE(self) -> str:
        """Log file path; empty means log to the terminal."""
        return self._processing.log_file

    def resolve_threads(self, flag: Optional[int] = None) -> int:
        """Worker count from the flag, the environment, then YAML."""
        value: Optional[int] = flag
        if value is None:
            raw = os.getenv(THREADS_ENV, "").strip()
            if raw:
                try:
                    value = int(raw)
                except ValueError:
                    self._console.print(
                        f"[yellow]Warning:[/] ignoring non-integer "
                        f"{THREADS_ENV}={raw!r}"
                    )
        if value is None:
            value = self.THREADS
        if value <= 0:
            return os.cpu_count() or 1
        return value

    def snapshot(self) -> Dict[str, Any]:
        """Merged YAML configuration as loaded."""
        return self._yaml_config

    def _section(self, name: str) -> Dict[str, Any]:
        section = self._yaml_config.get(name, {})
        return section if isinstance(section, dict) else {}

    def _load_version(self) -> str:
        """Return package version using pyproject metadata as the source."""
        try:
            return importlib_metadata.version("revolve-fractals")
        except importlib_metadata.PackageNotFoundError:
            return self._load_version_from_pyproject()
        except Exception:
            return "0.0.0"

    def _load_version_from_pyproject(self) -> str:
        project_root = Path(__file__).resolve().parent.parent
        pyproject_path = project_root / "pyproject.toml"
        if not pyproject_path.exists():
            return "0.0.0"

        try:
            with pyproject_path.open("rb") as handle:
                data = tomllib.load(handle)
        except (OSError, tomllib.TOMLDecodeError):
            return "0.0.0"

        project_section = data.get("project", {})
        version = project_section.get("version")
        if isinstance(version, str) and version.strip():
            return version.strip()
        return "0.0.0"
