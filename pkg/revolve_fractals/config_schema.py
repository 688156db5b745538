"""Configuration schema definitions and validation.

This module defines the structure and validation logic for the
application's YAML configuration files.
"""

from dataclasses import dataclass
from typing import Any, Dict

CONFIG_VERSION = "1.0"  # For future migrations

VALID_LOG_LEVELS = [
    "DEBUG",
    "INFO",
    "WARNING",
    "ERROR",
    "CRITICAL",
]


@dataclass
class GenerationConfig:
    """Depth and dedup settings for point generation."""

    depth: int = 14
    verify_depth: int = 10
    dedup_grid: float = 1e-12
    radix_max_steps: int = 256

    def validate(self) -> list[str]:
        """Return list of validation errors."""
        errors = []
        if self.depth < 0:
            errors.append("generation.depth must be >= 0")
        if self.verify_depth < 0:
            errors.append("generation.verify_depth must be >= 0")
        if not 0 < self.dedup_grid < 1e-6:
            errors.append("generation.dedup_grid must be in (0, 1e-6)")
        if self.radix_max_steps < 1:
            errors.append("generation.radix_max_steps must be >= 1")
        return errors

    @classmethod
    def from_dict(
        cls, data: Dict[str, Any]
    ) -> "GenerationConfig":
        """Create GenerationConfig from dictionary."""
        return cls(
            depth=int(data.get("depth", 14)),
            verify_depth=int(data.get("verify_depth", 10)),
            dedup_grid=float(data.get("dedup_grid", 1e-12)),
            radix_max_steps=int(data.get("radix_max_steps", 256)),
        )


@dataclass
class RenderConfig:
    """Image size and framing."""

    size: int = 512
    padding: float = 0.05
    invert: bool = False

    def validate(self) -> list[str]:
        """Return list of validation errors."""
        errors = []
        if self.size < 1:
            errors.append("render.size must be >= 1")
        if self.padding < 0:
            errors.append("render.padding must be >= 0")
        return errors

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RenderConfig":
        """Create RenderConfig from dictionary."""
        return cls(
            size=int(data.get("size", 512)),
            padding=float(data.get("padding", 0.05)),
            invert=bool(data.get("invert", False)),
        )


@dataclass
class VerifyConfig:
    exact_tolerance: float = 1e-9
    kiko_samples: int = 1024
    kiko_depth: int = 40

    def validate(self) -> list[str]:
        """Return list of validation errors."""
        errors = []
        if self.exact_tolerance <= 0:
            errors.append("verify.exact_tolerance must be > 0")
        if self.kiko_samples < 2:
            errors.append("verify.kiko_samples must be >= 2")
        if self.kiko_depth < 0:
            errors.append("verify.kiko_depth must be >= 0")
        return errors

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "VerifyConfig":
        """Create VerifyConfig from dictionary."""
        return cls(
            exact_tolerance=float(data.get("exact_tolerance", 1e-9)),
            kiko_samples=int(data.get("kiko_samples", 1024)),
            kiko_depth=int(data.get("kiko_depth", 40)),
        )


@dataclass
class ProcessingConfig:
    """Threading and logging settings."""

    threads: int = 0
    log_level: str = "INFO"
    log_file: str = "revolve_fractals.log"

    def validate(self) -> list[str]:
        """Return list of validation errors."""
        errors = []
        if self.threads < 0:
            errors.append("processing.threads must be >= 0")
        if self.log_level not in VALID_LOG_LEVELS:
            errors.append(f"invalid log_level: {self.log_level}")
        return errors

    @classmethod
    def from_dict(
        cls, data: Dict[str, Any]
    ) -> "ProcessingConfig":
        """Create ProcessingConfig from dictionary."""
        return cls(
            threads=int(data.get("threads", 0)),
            log_level=str(data.get("log_level", "INFO")),
            log_file=str(
                data.get("log_file", "revolve_fractals.log") or ""
            ),
        )
