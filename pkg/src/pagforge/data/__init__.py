"""Bundled corpora and configuration files."""

from __future__ import annotations

import os
from pathlib import Path


def data_root() -> Path:
    """Default data directory, overridable via PAGFORGE_DATA_DIR."""
    override = os.environ.get("PAGFORGE_DATA_DIR")
    if override:
        return Path(override)
    return Path(__file__).resolve().parent


def bundled(name: str) -> Path:
    """Path of a bundled data file."""
    return data_root() / name
