from __future__ import annotations

import pytest

from sipkit.core.chart import Chart, Piece
from sipkit.core.clopen import HomeoClass, format_clopen, homeo_class, parse_clopen
from sipkit.core.homeo import (
    BlockMap,
    BlockSystem,
    ChartMap,
    HomeoError,
    Identity,
    InducedPerm,
    build_homeo_between,
    compose,
    fixes_pointwise,
    image,
    in_K,
    in_K_star,
    inverse,
    lift,
    pi_of,
    preimage,
    restrict_to_blocks,
    setwise_stabilizes,
    signature,
    stabilizes_block_family,
    swap,
    tail_piece,
    unit_push,
)
from sipkit.core.ordinal import ZERO, parse_ordinal
from sipkit.core.perm import Zigzag, cycle, transposition
from sipkit.core.sampling import block_samples, random_homeo
from sipkit.core.sigcalc import ClassPair, parse_pair, signed

w = parse_ordinal


def test_block_geometry(blocks):
    assert blocks.delta == w("w^3")
    assert (blocks.base(2), blocks.top(2)) == (w("w^2"), w("w^2*2"))
    assert blocks.block_of(w("5")) == 1
    assert blocks.block_of(w("w^2")) == 1
    assert blocks.block_of(w("w^2+1")) == 2
    assert blocks.block_of(w("w^3")) is None
    assert blocks.local(w("w^2+w+3")) == w("w+3")
    assert blocks.unit_of(w("w^2+w*3+2"), 2) == 3
    assert blocks.unit_of(w("w^2+5"), 2) == 0
    assert blocks.unit_point(2, 3) == w("w^2+w*3")
    assert blocks.phi_ij(1, 3, w("w+1")) == w("w^2*2+w+1")


def test_block_geometry_rejects_bad_input(blocks):
    with pytest.raises(HomeoError):
        BlockSystem(0)
    with pytest.raises(HomeoError):
        blocks.block_of(ZERO)
    with pytest.raises(HomeoError):
        blocks.block_of(w("w^3+1"))
    with pytest.raises(HomeoError):
        blocks.unit_of(w("w^2*2"), 2)
    with pytest.raises(HomeoError):
        blocks.base(0)


def test_lift_moves_whole_blocks(blocks):
    g = lift(blocks, Zigzag())
    assert g.eval(w("5")) == w("w^2+5")
    assert g.eval(w("w^2+5")) == w("w^2*3+5")
    assert g.eval(w("w^2*2+w")) == w("w")
    assert g.eval_inv(w("w^2+5")) == w("5")
    assert g.eval(w("w^3")) == w("w^3")
    assert pi_of(g, 1) == 2
    assert pi_of(g, 3) == 1
    assert InducedPerm(g).inverse_apply(1) == 3
    assert isinstance(lift(blocks, cycle(1)), Identity)


def test_unit_push_signatures(blocks):
    g = unit_push(blocks, 1)
    assert g.eval(w("3")) == w("w^2+3")
    assert g.eval(w("w+3")) == w("3")
    assert g.eval(w("w^2+3")) == w("w^2+w+3")
    assert pi_of(g, 1) == 1 and pi_of(g, 2) == 2
    first = signature(g, 1)
    assert first.pair == parse_pair("(E,(1,1))")
    assert format_clopen(first.q) == "{(0,w]}"
    second = signature(g, 2)
    assert second.pair == parse_pair("((1,1),E)")
    assert format_clopen(second.p) == "{(w^2,w^2 + w]}"
    assert signature(g, 3).pair == ClassPair()
    assert tail_piece(g, 1) == Piece(w("w"), w("w^2"), ZERO, w("w^2"))


def test_swap_signature_is_balanced(blocks):
    g = swap(blocks, (ZERO, w("w")), (w("w^2"), w("w^2+w")))
    assert g.eval(w("4")) == w("w^2+4")
    assert g.eval(w("w^2+4")) == w("4")
    pair = signature(g, 1).pair
    assert pair == parse_pair("((1,1),(1,1))")
    assert signed(pair).is_zero
    region = parse_clopen("{(0,w], (w^2,w^2+w]}", blocks.space)
    assert setwise_stabilizes(g, region, 4)
    with pytest.raises(HomeoError):
        swap(blocks, (ZERO, w("w*2")), (w("w"), w("w*3")))


def test_compose_and_inverse_roundtrip(blocks, rng):
    for _ in range(10):
        g = random_homeo(rng, blocks, max_block=6)
        h = inverse(g)
        for x in block_samples(blocks, rng, 6, 20):
            y = g.eval(x)
            assert h.eval(y) == x
            assert g.eval_inv(y) == x
            assert h.block_chart(blocks.block_of(y)).apply(y) == x


def test_compose_skips_identities(blocks):
    g = unit_push(blocks, 2)
    assert compose(Identity(blocks), g) is g
    assert compose(g, Identity(blocks)) is g
    assert inverse(inverse(g)) is g
    both = compose(lift(blocks, Zigzag()), g)
    assert both.eval(w("w^2+3")) == w("3")
    assert both.eval(w("w^2+w+3")) == w("w^2*3+3")
    assert both.describe().startswith("(compose (blockmap (zigzag))")


def test_pi_is_a_homomorphism(blocks, rng):
    for _ in range(10):
        g = random_homeo(rng, blocks, max_block=6)
        h = random_homeo(rng, blocks, max_block=6)
        gh = compose(g, h)
        for i in range(1, 8):
            assert pi_of(gh, i) == pi_of(g, pi_of(h, i))


def test_image_and_preimage(blocks):
    g = lift(blocks, Zigzag())
    assert image(g, blocks.block(1)) == blocks.block(2)
    assert preimage(g, blocks.block(1)) == blocks.block(3)
    with pytest.raises(HomeoError):
        image(g, blocks.space.full())


def test_membership_verdicts(blocks):
    push = unit_push(blocks, 1)
    verdict = in_K_star(push, 5)
    assert verdict and not verdict.exact
    assert str(verdict) == "true (up to block 5)"
    assert not in_K(push, 5)
    assert in_K(Identity(blocks), 3).holds
    assert not in_K_star(lift(blocks, Zigzag()), 3)
    assert fixes_pointwise(push, blocks.block(3), 10).exact
    assert fixes_pointwise(push, blocks.block(3), 10)
    assert not fixes_pointwise(push, blocks.block(1), 10)


def test_moved_bound(blocks):
    assert Identity(blocks).moved_bound() == 0
    assert unit_push(blocks, 1).moved_bound() == 3
    assert inverse(unit_push(blocks, 2)).moved_bound() == 4
    assert swap(blocks, (ZERO, w("w")), (w("w^2"), w("w^2+w"))).moved_bound() == 2
    assert lift(blocks, cycle(2, 3, 5)).moved_bound() == 5
    assert compose(unit_push(blocks, 1), lift(blocks, transposition(4, 6))).moved_bound() == 6
    assert lift(blocks, Zigzag()).moved_bound() is None


def test_fixes_pointwise_decides_unbounded_sets_exactly(blocks):
    space = blocks.space
    push = unit_push(blocks, 1)
    verdict = fixes_pointwise(push, parse_clopen("{(w^2*2,w^3]}", space), 5)
    assert verdict and verdict.exact
    assert str(verdict) == "true (exact)"
    assert not fixes_pointwise(push, parse_clopen("{(w^2,w^3]}", space), 5)
    assert fixes_pointwise(Identity(blocks), space.full(), 5).exact
    zigzag = lift(blocks, Zigzag())
    there_and_back = compose(zigzag, inverse(zigzag))
    bounded = fixes_pointwise(there_and_back, space.full(), 5)
    assert bounded and not bounded.exact
    assert str(bounded) == "true (up to block 5)"


def test_block_overrides(blocks):
    override = Chart(
        [
            Piece(ZERO, w("w"), w("w^2+w"), w("w^2+w*2")),
            Piece(w("w"), w("w*2"), w("w^2"), w("w^2+w")),
            Piece(w("w*2"), w("w^2"), w("w^2+w*2"), w("w^2*2")),
        ]
    )
    g = BlockMap(blocks, transposition(1, 2), {1: override})
    assert g.eval(w("3")) == w("w^2+w+3")
    assert g.eval(w("w^2+3")) == w("3")
    assert g.eval_inv(w("w^2+5")) == w("w+5")
    assert pi_of(g, 1) == 2
    assert "(override 1 (chart" in g.describe()
    with pytest.raises(HomeoError):
        BlockMap(blocks, transposition(1, 2), {1: Chart([Piece(ZERO, w("w"), w("w^2"), w("w^2+w"))])})


def test_chart_map_must_partition(blocks):
    with pytest.raises(HomeoError):
        ChartMap(blocks, Chart([Piece(ZERO, w("w^2"), ZERO, w("w^2"))]))


def test_restrict_to_blocks(blocks):
    h = swap(blocks, (ZERO, w("w")), (w("w"), w("w*2")))
    only_first = restrict_to_blocks(h, {1})
    assert only_first.eval(w("3")) == w("w+3")
    assert restrict_to_blocks(h, {2}).eval(w("3")) == w("3")
    broken = restrict_to_blocks(unit_push(blocks, 1), {1})
    with pytest.raises(HomeoError):
        broken.eval(w("3"))


def test_stabilizes_block_family(blocks):
    assert stabilizes_block_family(lift(blocks, transposition(1, 2)), 2)
    assert not stabilizes_block_family(lift(blocks, Zigzag()), 2)
    assert not stabilizes_block_family(unit_push(blocks, 2), 3)


def test_build_homeo_between(blocks):
    space = blocks.space
    cases = [
        ("{(0,w*2]}", "{(w^2,w^2+w], (w^2+w+3,w^2+w*2]}"),
        ("{(0,w+2]}", "{(0,2], (w,w*2]}"),
        ("{(0,w]}", "{(0,3], (w,w*2]}"),
    ]
    for left, right in cases:
        b, c = parse_clopen(left, space), parse_clopen(right, space)
        chart = build_homeo_between(b, c)
        assert chart.sources(space) == b
        assert chart.targets(space) == c
    assert build_homeo_between(space.empty(), space.empty()) == Chart()
    with pytest.raises(HomeoError):
        build_homeo_between(parse_clopen("{(0,w]}", space), parse_clopen("{(0,w*2]}", space))
    assert homeo_class(parse_clopen(cases[0][1], space)) == HomeoClass(1, 2)
