from __future__ import annotations

import pytest

from sipkit.controllers.errors import PreconditionError
from sipkit.controllers.zones import (
    DyadicZones,
    ResidueZones,
    ZoneError,
    ZonePerm,
    copy_into_zones,
    verify_restriction_split,
    verify_single_zone_reduction,
    verify_zone_conjugacy,
    verify_zone_supports,
    zone_conjugator,
)
from sipkit.core.homeo import in_K
from sipkit.core.perm import TablePerm, cycle, transposition
from sipkit.core.sampling import block_samples, random_blockwise

SWAP_PAIRS = TablePerm({1: 3, 3: 1, 2: 4, 4: 2})


def test_residue_zones():
    zones = ResidueZones(3)
    assert [zones.zone(i) for i in (1, 2, 3, 4, 5)] == [1, 2, 3, 1, 2]
    assert zones.theta(2, 3) == 8
    assert zones.theta_inverse(2, 8) == 3
    assert zones.members(1, 3) == [1, 4, 7]
    with pytest.raises(ZoneError):
        zones.theta(4, 1)
    with pytest.raises(ZoneError):
        zones.theta_inverse(1, 5)
    with pytest.raises(ZoneError):
        ResidueZones(0)


def test_dyadic_zones():
    zones = DyadicZones()
    assert zones.zone(12) == 3
    assert zones.zone(7) == 1
    assert zones.theta(3, 2) == 12
    assert zones.theta_inverse(3, 12) == 2
    for n in range(1, 5):
        for k in range(1, 20):
            assert zones.theta_inverse(n, zones.theta(n, k)) == k


def test_zone_perm():
    perm = ZonePerm(ResidueZones(3), cycle(1, 2, 3))
    assert perm.apply(4) == 5
    assert perm.inverse_apply(5) == 4
    assert all(perm.inverse_apply(perm(i)) == i for i in range(1, 40))


def test_zone_copies_stay_in_their_zone(blocks):
    h = random_blockwise(blocks, 3)
    zones = ResidueZones(4)
    copy = copy_into_zones(h, zones, 2)
    assert in_K(copy, 12)
    for i in (1, 3, 4, 5):
        assert copy.block_chart(i).is_identity
    assert verify_zone_supports(h, zones, [1, 2, 3], 12).passed


def test_zone_conjugacy(blocks, rng):
    h = random_blockwise(blocks, 5)
    zones = ResidueZones(4)
    points = block_samples(blocks, rng, 16, 40)
    result = verify_zone_conjugacy(h, zones, {1}, {2}, {3}, {4}, SWAP_PAIRS, points)
    assert result.name == "zone-conjugacy"
    assert result.passed and result.instances == len(points)


def test_zone_conjugacy_on_dyadic_zones(blocks, rng):
    h = random_blockwise(blocks, 8)
    psi = transposition(1, 2)
    points = block_samples(blocks, rng, 16, 40)
    assert verify_zone_conjugacy(h, DyadicZones(), {1, 3}, {2}, {2, 3}, {1}, psi, points).passed


def test_zone_conjugator_is_blockwise_lift(blocks):
    k = zone_conjugator(blocks, ResidueZones(4), SWAP_PAIRS)
    assert k.eval(blocks.top(1)) == blocks.top(3)


def test_zone_hypotheses(blocks):
    h = random_blockwise(blocks, 1)
    zones = ResidueZones(4)
    with pytest.raises(PreconditionError):
        verify_zone_conjugacy(h, zones, {1, 2}, {2}, {3, 4}, {4}, SWAP_PAIRS, [])
    with pytest.raises(PreconditionError):
        verify_zone_conjugacy(h, zones, {1}, {2}, {2}, {4}, SWAP_PAIRS, [])
    with pytest.raises(PreconditionError):
        verify_zone_conjugacy(h, zones, {1}, {2}, {5}, {2}, transposition(1, 5), [])
    with pytest.raises(PreconditionError):
        verify_single_zone_reduction(h, zones, {1, 2}, {3}, 3, [])


def test_single_zone_reduction_and_split(blocks, rng):
    h = random_blockwise(blocks, 21)
    zones = ResidueZones(5)
    points = block_samples(blocks, rng, 15, 30)
    assert verify_single_zone_reduction(h, zones, {1, 2}, {3}, 1, points).passed
    split = verify_restriction_split(h, lambda j: zones.zone(j) in {2, 4}, points)
    assert split.passed and split.instances == 1
