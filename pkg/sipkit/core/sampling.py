"""Seeded generators for ordinals, clopen sets, sample points and represented maps."""

from __future__ import annotations

import random
from typing import Iterable

from sipkit.core.chart import Chart, Piece, identity_chart
from sipkit.core.clopen import ClopenError, ClopenSet, HomeoClass, Interval, Space, make
from sipkit.core.homeo import (
    BlockSystem,
    ChartMap,
    Homeo,
    LazyBlockMap,
    compose,
    lift,
    swap,
    unit_push,
)
from sipkit.core.ordinal import ONE, ZERO, Ordinal, add, left_sub, omega_pow
from sipkit.core.perm import TablePerm, Zigzag


def rng_for(seed: int, name: str, index: int = 0) -> random.Random:
    """Independent deterministic stream per (seed, campaign, instance)."""
    return random.Random(f"{seed}:{name}:{index}")


def random_below_power(rng: random.Random, exponent: int, max_terms: int = 3, max_coefficient: int = 5) -> Ordinal:
    """A random ordinal strictly below w^exponent."""
    if exponent <= 0:
        return ZERO
    count = rng.randint(0, min(max_terms, exponent))
    exponents = sorted(rng.sample(range(exponent), count), reverse=True)
    return Ordinal(tuple((e, rng.randint(1, max_coefficient)) for e in exponents))


def random_ordinal(rng: random.Random, max_exponent: int = 5, max_coefficient: int = 20, max_terms: int = 4) -> Ordinal:
    """A random ordinal below w^(max_exponent + 1)."""
    return random_below_power(rng, max_exponent + 1, max_terms, max_coefficient)


def random_below(rng: random.Random, bound: Ordinal) -> Ordinal:
    """A random ordinal t < bound, reaching every CNF prefix of bound."""
    if not bound:
        raise ValueError("nothing lies below 0")
    index = rng.randrange(len(bound.terms))
    exponent, coefficient = bound.terms[index]
    head = bound.terms[:index]
    kept = rng.randrange(coefficient)
    if kept:
        head = head + ((exponent, kept),)
    tail = random_below_power(rng, exponent)
    return Ordinal(head + tail.terms)


def random_between(rng: random.Random, lo: Ordinal, hi: Ordinal) -> Ordinal:
    """A random point of the interval (lo, hi]."""
    return add(lo, add(random_below(rng, left_sub(lo, hi)), ONE))


def random_clopen(rng: random.Random, space: Space, max_intervals: int = 8) -> ClopenSet:
    """A random clopen subset of the space with at most max_intervals intervals."""
    if not space.delta:
        return space.empty()
    count = rng.randint(0, max_intervals)
    cuts = sorted({random_below(rng, space.delta) for _ in range(2 * count)} | {space.delta})
    raw: list[Interval] = []
    previous = ZERO if rng.random() < 0.5 else None
    for cut in cuts:
        if previous is None:
            previous = cut
            continue
        if previous < cut:
            raw.append((previous, cut))
        previous = None
    return make(space, raw[:max_intervals])


def random_of_class(rng: random.Random, space: Space, target: HomeoClass, start: Ordinal = ZERO, noise: int = 3) -> ClopenSet:
    """A random bounded set of the given class above start, padded with lower-rank intervals."""
    if target.is_empty:
        return space.empty()
    ranks = [target.rank] * target.degree
    if target.rank:
        ranks += [rng.randrange(target.rank) for _ in range(rng.randint(0, noise))]
    rng.shuffle(ranks)
    raw: list[Interval] = []
    cursor = start
    for rank in ranks:
        lo = add(cursor, add(random_below_power(rng, rank + 1), ONE))
        cursor = add(lo, add(omega_pow(rank), random_below_power(rng, rank)))
        raw.append((lo, cursor))
    if cursor > space.delta:
        raise ClopenError(f"class {target} does not fit above {start} in [1, {space.delta}]")
    return make(space, raw)


def sample_points(p: ClopenSet, rng: random.Random, count: int) -> list[Ordinal]:
    """Interval endpoints of p followed by count seeded interior points."""
    points: dict[Ordinal, None] = {}
    for lo, hi in p.intervals:
        points[add(lo, ONE)] = None
        points[hi] = None
    if p.intervals:
        for _ in range(count):
            lo, hi = rng.choice(p.intervals)
            points[random_between(rng, lo, hi)] = None
    return list(points)


def block_samples(blocks: BlockSystem, rng: random.Random, bound: int, count: int) -> list[Ordinal]:
    """Both ends of every block up to bound plus count random block points."""
    points: dict[Ordinal, None] = {}
    for i in range(1, bound + 1):
        points[add(blocks.base(i), ONE)] = None
        points[blocks.top(i)] = None
    for _ in range(count):
        i = rng.randint(1, bound)
        points[random_between(rng, blocks.base(i), blocks.top(i))] = None
    return list(points)


def chart_endpoints(maps: Iterable[Homeo], bound: int) -> list[Ordinal]:
    """First and last source point of every chart piece on blocks up to bound."""
    points: dict[Ordinal, None] = {}
    for g in maps:
        for i in range(1, bound + 1):
            for piece in g.block_chart(i):
                points[add(piece.src_lo, ONE)] = None
                points[piece.src_hi] = None
    return list(points)


def random_table(rng: random.Random, max_block: int) -> TablePerm:
    """A random permutation of a random subset of [1, max_block]."""
    support = rng.sample(range(1, max_block + 1), rng.randint(0, max_block))
    shuffled = support[:]
    rng.shuffle(shuffled)
    return TablePerm(dict(zip(support, shuffled)))


def _random_length(rng: random.Random, blocks: BlockSystem, room: int) -> Ordinal:
    exponent = rng.randint(0, blocks.alpha - 1)
    if exponent == blocks.alpha - 1:
        return omega_pow(exponent, rng.randint(1, room))
    return omega_pow(exponent, rng.randint(1, 4))


def random_block_chart(blocks: BlockSystem, rng: random.Random, i: int) -> Chart:
    """A chart of A_i onto itself exchanging two equal-type subintervals."""
    base, top = blocks.base(i), blocks.top(i)
    first, second = sorted(rng.sample(range(0, 6), 2))
    length = _random_length(rng, blocks, second - first)
    a = blocks.unit_point(i, first)
    c = blocks.unit_point(i, second)
    b, d = add(a, length), add(c, length)
    pieces = [Piece(a, b, c, d), Piece(c, d, a, b), Piece(d, top, d, top)]
    if base < a:
        pieces.append(Piece(base, a, base, a))
    if b < c:
        pieces.append(Piece(b, c, b, c))
    return Chart(pieces)


def random_blockwise(blocks: BlockSystem, seed: int | str, label: str = "blockwise") -> LazyBlockMap:
    """A map fixing every block setwise, drawn independently per block from the seed."""

    def factory(i: int) -> Chart:
        rng = random.Random(f"{seed}:{label}:{i}")
        if rng.random() < 0.25:
            return identity_chart(blocks.base(i), blocks.top(i))
        return random_block_chart(blocks, rng, i)

    return LazyBlockMap(blocks, factory, lambda j: (j,), label=label)


def random_cross_swap(blocks: BlockSystem, rng: random.Random, max_block: int) -> ChartMap:
    """Exchange equal-type intervals lying in two different blocks."""
    i, j = sorted(rng.sample(range(1, max_block + 1), 2))
    u, v = rng.randint(0, 4), rng.randint(0, 4)
    length = _random_length(rng, blocks, 3)
    a, c = blocks.unit_point(i, u), blocks.unit_point(j, v)
    return swap(blocks, (a, add(a, length)), (c, add(c, length)))


def random_homeo(rng: random.Random, blocks: BlockSystem, max_block: int = 8, steps: int = 3) -> Homeo:
    """A composite of block lifts, unit pushes, cross-block swaps and blockwise scrambles."""
    factors: list[Homeo] = []
    for _ in range(steps):
        choice = rng.randrange(5)
        if choice == 0:
            factors.append(lift(blocks, random_table(rng, max_block)))
        elif choice == 1:
            factors.append(lift(blocks, Zigzag()))
        elif choice == 2:
            factors.append(unit_push(blocks, rng.randint(1, max_block)))
        elif choice == 3:
            factors.append(random_cross_swap(blocks, rng, max_block))
        else:
            factors.append(random_blockwise(blocks, rng.getrandbits(32)))
    return compose(*factors)
