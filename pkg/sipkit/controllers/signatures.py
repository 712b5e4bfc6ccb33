"""Signature reductions through cofinal subsets and the signature cocycle."""

from __future__ import annotations

import logging
import random

from sipkit.core.chart import Chart
from sipkit.core.clopen import ClopenSet, homeo_class, make
from sipkit.core.homeo import Homeo, HomeoError, compose, image, inverse, pi_of, signature, tail_piece
from sipkit.core.ordinal import ONE, add
from sipkit.core.sampling import random_between
from sipkit.core.sigcalc import ClassPair, pair_add, pair_neg, sim

logger = logging.getLogger(__name__)


def signature_via_cofinal(g: Homeo, i: int, b: ClopenSet) -> tuple[ClopenSet, ClopenSet]:
    """(A_pi(i) minus gB, A_i minus B) for B cofinal in A_i with gB inside A_pi(i)."""
    blocks = g.blocks
    block = blocks.block(i)
    if not b.subset_of(block):
        raise HomeoError(f"B is not a subset of A_{i}")
    if blocks.top(i) not in b:
        raise HomeoError(f"B is not cofinal in A_{i}")
    j = pi_of(g, i)
    moved = image(g, b)
    if not moved.subset_of(blocks.block(j)):
        raise HomeoError(f"gB leaves A_{j}")
    return blocks.block(j) - moved, block - b


def cofinal_pair(g: Homeo, i: int, b: ClopenSet) -> ClassPair:
    p, q = signature_via_cofinal(g, i, b)
    return ClassPair(homeo_class(p), homeo_class(q))


def check_signature_via_cofinal(g: Homeo, i: int, b: ClopenSet) -> bool:
    """The cofinal pair is ~ the signature pair of g at i."""
    return sim(cofinal_pair(g, i, b), signature(g, i).pair)


def random_cofinal(g: Homeo, i: int, rng: random.Random) -> ClopenSet:
    """A cofinal subset of A_i that g maps into A_pi(i)."""
    blocks = g.blocks
    j = pi_of(g, i)
    staying = make(
        blocks.space,
        [(p.src_lo, p.src_hi) for p in g.block_chart(i) if blocks.target_block(p) == j],
    )
    tail_start = tail_piece(g, i).src_lo
    if tail_start == blocks.base(i):
        return staying
    cuts = sorted({random_between(rng, blocks.base(i), tail_start) for _ in range(4)})
    return staying - make(blocks.space, zip(cuts[0::2], cuts[1::2]))


def cocycle_sides(g: Homeo, h: Homeo, i: int) -> tuple[ClassPair, ClassPair]:
    """(signature of hg at i, signature of g at i plus signature of h at pi(g)(i))."""
    composite = signature(compose(h, g), i).pair
    summed = pair_add(signature(g, i).pair, signature(h, pi_of(g, i)).pair)
    return composite, summed


def check_cocycle(g: Homeo, h: Homeo, i: int) -> bool:
    composite, summed = cocycle_sides(g, h, i)
    ok = sim(composite, summed)
    if not ok:
        logger.debug("cocycle fails at block %d: %s vs %s", i, composite, summed)
    return ok


def check_inverse_signature(g: Homeo, i: int) -> bool:
    """The signature of g^-1 at pi(g)(i) is the swapped signature of g at i."""
    return signature(inverse(g), pi_of(g, i)).pair == pair_neg(signature(g, i).pair)


def check_chart_consistency(g: Homeo, i: int) -> bool:
    """Chart evaluation agrees with direct evaluation on every piece boundary of A_i."""
    chart: Chart = g.block_chart(i)
    for piece in chart:
        first = add(piece.src_lo, ONE)
        if g.eval(first) != piece.apply(first) or g.eval(piece.src_hi) != piece.dst_hi:
            return False
        if g.eval_inv(piece.dst_hi) != piece.src_hi:
            return False
    return True
