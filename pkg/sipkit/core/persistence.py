"""Path utilities for user defaults and report persistence."""

from __future__ import annotations

import json
import logging
import os
import sys
from pathlib import Path

logger = logging.getLogger(__name__)

CONFIG_ENV = "SIPKIT_CONFIG"


def _get_user_config_dir() -> Path:
    """Return the per-user configuration directory."""
    if sys.platform.startswith("win"):
        base_dir = Path(
            os.environ.get("LOCALAPPDATA")
            or os.environ.get("APPDATA")
            or Path.home() / "AppData" / "Local"
        )
    elif sys.platform == "darwin":
        base_dir = Path.home() / "Library" / "Application Support"
    else:
        base_dir = Path(os.environ.get("XDG_CONFIG_HOME") or Path.home() / ".config")
    return base_dir / "sipkit"


def defaults_path() -> Path:
    """Return the user defaults file, honouring SIPKIT_CONFIG."""
    override = os.environ.get(CONFIG_ENV)
    if override:
        return Path(override)
    return _get_user_config_dir() / "defaults.json"


def load_user_defaults(path: Path | None = None) -> dict:
    """Load run defaults from the JSON file; anything unusable yields {}."""
    target = path or defaults_path()
    if not target.exists():
        return {}
    try:
        data = json.loads(target.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        logger.warning("ignoring defaults file %s: %s", target, exc)
        return {}
    if not isinstance(data, dict):
        logger.warning("ignoring defaults file %s: top level is not an object", target)
        return {}
    return data


def save_user_defaults(values: dict, path: Path | None = None) -> bool:
    """Save run defaults to the JSON file."""
    target = path or defaults_path()
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(json.dumps(values, ensure_ascii=False, indent=2), encoding="utf-8")
    except OSError as exc:
        logger.warning("could not save defaults to %s: %s", target, exc)
        return False
    return True


def save_report(text: str, path: Path) -> bool:
    """Write a rendered report; failures are logged, never raised."""
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
    except OSError as exc:
        logger.warning("could not write report to %s: %s", path, exc)
        return False
    return True
