from __future__ import annotations

import pytest

from sipkit.controllers.signatures import (
    check_chart_consistency,
    check_cocycle,
    check_inverse_signature,
    check_signature_via_cofinal,
    cocycle_sides,
    cofinal_pair,
    random_cofinal,
    signature_via_cofinal,
)
from sipkit.core.clopen import format_clopen, parse_clopen
from sipkit.core.homeo import HomeoError, lift, unit_push
from sipkit.core.perm import transposition
from sipkit.core.sampling import random_homeo
from sipkit.core.sigcalc import parse_pair


def test_cofinal_subsets_give_the_signature(blocks):
    g = unit_push(blocks, 1)
    staying = parse_clopen("{(w,w^2]}", blocks.space)
    p, q = signature_via_cofinal(g, 1, staying)
    assert not p
    assert format_clopen(q) == "{(0,w]}"
    smaller = parse_clopen("{(w*2,w^2]}", blocks.space)
    assert cofinal_pair(g, 1, smaller) == parse_pair("((1,1),(1,2))")
    assert check_signature_via_cofinal(g, 1, smaller)


def test_cofinal_preconditions(blocks):
    g = unit_push(blocks, 1)
    with pytest.raises(HomeoError):
        signature_via_cofinal(g, 1, parse_clopen("{(w,w*2]}", blocks.space))
    with pytest.raises(HomeoError):
        signature_via_cofinal(g, 1, parse_clopen("{(w,w^2+1]}", blocks.space))
    with pytest.raises(HomeoError):
        signature_via_cofinal(g, 1, blocks.block(1))


def test_random_cofinal_subsets(blocks, rng):
    for _ in range(30):
        g = random_homeo(rng, blocks, max_block=6)
        i = rng.randint(1, 6)
        b = random_cofinal(g, i, rng)
        assert blocks.top(i) in b
        assert check_signature_via_cofinal(g, i, b)


def test_cocycle_by_hand(blocks):
    g = unit_push(blocks, 1)
    h = lift(blocks, transposition(1, 2))
    composite, summed = cocycle_sides(g, h, 1)
    assert composite == summed == parse_pair("(E,(1,1))")


def test_cocycle_and_inverse_law(blocks, rng):
    for _ in range(15):
        g = random_homeo(rng, blocks, max_block=6)
        h = random_homeo(rng, blocks, max_block=6)
        for i in range(1, 9):
            assert check_cocycle(g, h, i)
            assert check_inverse_signature(g, i)
            assert check_chart_consistency(g, i)
