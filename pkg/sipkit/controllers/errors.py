"""Exceptions shared by the construction controllers."""

from __future__ import annotations


class PreconditionError(ValueError):
    """Raised when verifier inputs do not satisfy the hypotheses being checked."""


class ConstructionError(RuntimeError):
    """Raised when a construction breaks one of its own asserted invariants."""
