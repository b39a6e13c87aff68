"""
Settings loader with mtime-based reload.
Sprint: S0

Loads config/wittforge.yaml into a validated Settings model. The file is
re-read when its mtime changes, so long-running sessions pick up edits
without a restart. WITTFORGE_* environment variables (after a local .env
is loaded) override individual keys.
"""

from __future__ import annotations

import logging
import os
from pathlib import Path
from typing import Any, Literal, Optional

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError, field_validator

logger = logging.getLogger(__name__)

# Default settings file, relative to the project root
_DEFAULT_CONFIG_PATH = Path(__file__).resolve().parents[2] / "config" / "wittforge.yaml"

# Environment variable → Settings field
_ENV_OVERRIDES = {
    "WITTFORGE_SEED": "seed",
    "WITTFORGE_STRATEGY": "strategy",
    "WITTFORGE_ENUMERATION_BOUND": "enumeration_bound",
    "WITTFORGE_SAMPLE_COUNT": "sample_count",
    "WITTFORGE_AUDIT_LOG_PATH": "audit_log_path",
}


# ---------------------------------------------------------------------------
# Settings model
# ---------------------------------------------------------------------------

class Settings(BaseModel):
    """Parsed and validated content of wittforge.yaml plus environment overrides."""

    version: str = "1.0"

    enumeration_bound: int = Field(default=1_000_000, ge=1)
    """Largest domain that is enumerated exhaustively."""

    sample_count: int = Field(default=10_000, ge=1)
    """Seeded samples drawn when a domain exceeds the enumeration bound."""

    seed: int = 0xD15C
    """Sampling seed."""

    symbolic_bound: int = Field(default=5, ge=1)
    """Maximal length n for universal Witt polynomials."""

    strategy: Literal["polynomial", "ghost", "differential"] = "polynomial"
    """Witt arithmetic strategy."""

    audit_log_path: str = "logs/checks.jsonl"
    """Append-only JSONL log of check runs."""

    max_counterexamples: int = Field(default=10, ge=0)
    """Counterexamples kept per report."""

    coeq_max_tokens: int = Field(default=8, ge=2)
    """Longest f-generator count explored when closing coequalizer words."""

    @field_validator("seed", mode="before")
    @classmethod
    def parse_seed(cls, v: Any) -> Any:
        # accepts decimal or 0x-prefixed strings from env / YAML
        if isinstance(v, str):
            return int(v.strip(), 0)
        return v


# ---------------------------------------------------------------------------
# Loader
# ---------------------------------------------------------------------------

class SettingsLoader:
    """
    Loads and caches Settings from a YAML file.

    Call get_settings() whenever settings are needed; it re-reads the file
    only when its mtime changed, and re-applies environment overrides on
    every call so monkeypatched variables take effect immediately.

    Usage:
        loader = SettingsLoader()
        settings = loader.get_settings()
        bound = settings.enumeration_bound
    """

    def __init__(self, config_path: Optional[Path] = None) -> None:
        self._explicit_path = config_path
        self._cache: dict[str, Any] | None = None
        self._mtime: float | None = None
        self._cached_path: Path | None = None
        self._dotenv_loaded = False

    # ------------------------------------------------------------------
    # Public API
    # ------------------------------------------------------------------

    @property
    def config_path(self) -> Path:
        if self._explicit_path is not None:
            return self._explicit_path
        override = os.environ.get("WITTFORGE_CONFIG")
        return Path(override) if override else _DEFAULT_CONFIG_PATH

    def get_settings(self) -> Settings:
        """Return the current settings (file values + environment overrides)."""
        if not self._dotenv_loaded:
            load_dotenv(override=False)
            self._dotenv_loaded = True
        raw = dict(self._file_values())
        for env_name, key in _ENV_OVERRIDES.items():
            value = os.environ.get(env_name)
            if value is not None and value != "":
                raw[key] = value
        try:
            return Settings(**raw)
        except ValidationError as exc:
            logger.error("Invalid settings (%s), falling back to defaults: %s",
                         self.config_path, exc)
            return Settings()

    def reload(self) -> Settings:
        """Force a re-read from disk, bypassing the mtime cache."""
        self._cache = None
        self._mtime = None
        return self.get_settings()

    # ------------------------------------------------------------------
    # Internal helpers
    # ------------------------------------------------------------------

    def _file_values(self) -> dict[str, Any]:
        path = self.config_path
        if not path.exists():
            logger.debug("Settings file not found, using defaults: %s", path)
            return {}
        if self._is_stale(path):
            try:
                with open(path, encoding="utf-8") as f:
                    raw = yaml.safe_load(f) or {}
                if not isinstance(raw, dict):
                    raise ValueError("top level must be a mapping")
                self._cache = raw
                self._mtime = path.stat().st_mtime
                self._cached_path = path
                logger.debug("Loaded settings file: %s (%d keys)", path, len(raw))
            except Exception as exc:  # noqa: BLE001
                logger.error("Failed to load settings file %s: %s", path.name, exc)
                self._cache = {}
                self._mtime = None
                self._cached_path = path
        return self._cache or {}

    def _is_stale(self, path: Path) -> bool:
        """Return True if the file changed since the last load (or was never loaded)."""
        if self._cache is None or self._cached_path != path:
            return True
        try:
            current_mtime = path.stat().st_mtime
        except OSError:
            return False
        return self._mtime != current_mtime


# ---------------------------------------------------------------------------
# Module-level singleton
# ---------------------------------------------------------------------------

_loader: Optional[SettingsLoader] = None


def get_loader() -> SettingsLoader:
    """Return the module-level singleton loader (lazy-initialised)."""
    global _loader
    if _loader is None:
        _loader = SettingsLoader()
    return _loader


def load_settings() -> Settings:
    """Convenience function: current settings."""
    return get_loader().get_settings()
