from __future__ import annotations

import pytest

from sipkit.core.config import DEFAULT_ALPHA, DEFAULT_BLOCKS, DEFAULT_SAMPLES, ConfigError, RunConfig


def test_defaults_are_valid():
    config = RunConfig().validate()
    assert config.alpha == DEFAULT_ALPHA
    assert config.blocks is None
    assert config.bound() == DEFAULT_BLOCKS
    assert config.sample_count() == DEFAULT_SAMPLES
    assert config.count(500) == 500


def test_layering_prefers_flags_over_file():
    config = RunConfig.layered({"alpha": 3, "seed": 9, "unknown": 1}, {"alpha": 4, "seed": None})
    assert config.alpha == 4
    assert config.seed == 9


def test_instances_override_counts():
    assert RunConfig(instances=7).count(500) == 7


def test_campaign_bounds_fall_back_to_their_own_defaults():
    assert RunConfig().bound(40) == 40
    assert RunConfig().sample_count(1_000) == 1_000
    assert RunConfig(blocks=6).bound(40) == 6
    assert RunConfig(samples=12).sample_count(1_000) == 12
    assert RunConfig.layered({"blocks": 9}, {"blocks": None}).bound(40) == 9


@pytest.mark.parametrize(
    "changes",
    [
        {"alpha": 0},
        {"blocks": 0},
        {"samples": 0},
        {"workers": 0},
        {"seed": -1},
        {"seed": 2**64},
        {"format": "xml"},
        {"instances": 0},
    ],
)
def test_out_of_range_fields(changes):
    with pytest.raises(ConfigError):
        RunConfig.layered({}, changes)
