"""sipkit - ordinal clopen algebras and homeomorphism groups of countable ordinals."""

from sipkit.main import main
from sipkit.ui.app import cli, run

__all__ = [
    "cli",
    "main",
    "run",
]
