"""UI layer - the command-line surface."""

from sipkit.ui.app import cli, run
from sipkit.ui.render import render_json, render_text

__all__ = ["cli", "run", "render_json", "render_text"]
