"""Shared fixtures for the sipkit test suite."""

from __future__ import annotations

import random

import pytest

from sipkit.core.clopen import Space
from sipkit.core.homeo import BlockSystem
from sipkit.core.ordinal import omega_pow


@pytest.fixture(autouse=True)
def isolated_defaults(tmp_path, monkeypatch):
    """Point the user defaults file at an empty temp location."""
    path = tmp_path / "defaults.json"
    monkeypatch.setenv("SIPKIT_CONFIG", str(path))
    return path


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240601)


@pytest.fixture
def blocks() -> BlockSystem:
    return BlockSystem(2)


@pytest.fixture
def space4() -> Space:
    return Space(omega_pow(4))
