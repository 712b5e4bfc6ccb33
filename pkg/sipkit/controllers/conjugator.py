"""Conjugators that give a single-cycle map any realizable signature along its orbit.

The conjugator h fixes every block index. On block k it keeps a canonical
copy of the running pairs R_1 .. R_k (the set B'_k) and receives a second
copy (the set C'_k); the pieces are handed one block up or down, so that
h^-1 g h picks up exactly the target pair on each block.
"""

from __future__ import annotations

import logging
import random
import threading
from typing import Callable, Mapping, Sequence

from sipkit.controllers.errors import ConstructionError, PreconditionError
from sipkit.core.chart import Chart, ChartError, Piece
from sipkit.core.clopen import ClopenSet, HomeoClass, Interval, make
from sipkit.core.homeo import (
    Homeo,
    HomeoError,
    LazyBlockMap,
    build_homeo_between,
    compose,
    inverse,
    pi_of,
    signature,
    tail_piece,
)
from sipkit.core.ordinal import add, omega_pow
from sipkit.core.perm import Perm, orbit_index, require_single_cycle
from sipkit.core.report import CheckResult
from sipkit.core.sigcalc import ZERO_PAIR, ClassPair, pair_neg, sim

logger = logging.getLogger(__name__)

Target = Callable[[int], ClassPair]
PieceKey = tuple[str, int]


def eventually_trivial(values: Mapping[int, ClassPair]) -> Target:
    """Target pairs given on finitely many blocks, (E, E) elsewhere."""
    table = dict(values)
    return lambda i: table.get(i, ZERO_PAIR)


def periodic(pattern: Sequence[ClassPair]) -> Target:
    """Target repeating pattern over blocks 1, 2, ..."""
    if not pattern:
        raise PreconditionError("a periodic target needs a non-empty pattern")
    cycle = tuple(pattern)
    return lambda i: cycle[(i - 1) % len(cycle)]


def signature_target(u: Homeo) -> Target:
    """The signature pairs of u, block by block."""
    return lambda i: signature(u, i).pair


def random_class(rng: random.Random, alpha: int) -> HomeoClass:
    if rng.random() < 0.3:
        return HomeoClass()
    return HomeoClass(rng.randrange(alpha), rng.randint(1, 3))


def random_target(rng: random.Random, alpha: int, support: int = 5) -> Target:
    """An eventually trivial target with realizable pairs on blocks 1..support."""
    return eventually_trivial(
        {i: ClassPair(random_class(rng, alpha), random_class(rng, alpha)) for i in range(1, support + 1)}
    )


def _check_realizable(pair: ClassPair, alpha: int, i: int) -> None:
    for component in (pair.p, pair.q):
        if not component.is_empty and component.rank >= alpha:
            raise PreconditionError(f"target {pair} at block {i} has rank {component.rank}, needs < {alpha}")


class RSSequence:
    """Running pairs R along the orbit of block 1 under sigma, with R at block 1 = (E, E)."""

    def __init__(self, g: Homeo, target: Target, sigma: Perm) -> None:
        require_single_cycle(sigma)
        self.g = g
        self.target = target
        self.sigma = sigma
        self.alpha = g.blocks.alpha
        self._values: dict[int, ClassPair] = {0: ZERO_PAIR}
        self._blocks: dict[int, int] = {0: 1}
        self._signatures: dict[int, ClassPair] = {}
        self._lock = threading.RLock()

    def block_at(self, n: int) -> int:
        """sigma^n(1)."""
        with self._lock:
            if n in self._blocks:
                return self._blocks[n]
            step = 1 if n > 0 else -1
            m = n
            while m not in self._blocks:
                m -= step
            while m != n:
                current = self._blocks[m]
                m += step
                self._blocks[m] = self.sigma.apply(current) if step > 0 else self.sigma.inverse_apply(current)
            return self._blocks[n]

    def position(self, i: int) -> int:
        return orbit_index(self.sigma, i)

    def signature_at(self, i: int) -> ClassPair:
        with self._lock:
            if i not in self._signatures:
                self._signatures[i] = signature(self.g, i).pair
            return self._signatures[i]

    def target_at(self, i: int) -> ClassPair:
        pair = self.target(i)
        _check_realizable(pair, self.alpha, i)
        return pair

    def at_position(self, n: int) -> ClassPair:
        with self._lock:
            if n in self._values:
                return self._values[n]
            step = 1 if n > 0 else -1
            m = n
            while m not in self._values:
                m -= step
            while m != n:
                if step > 0:
                    block = self.block_at(m)
                    value = self._values[m] + pair_neg(self.signature_at(block)) + self.target_at(block)
                else:
                    block = self.block_at(m - 1)
                    value = self._values[m] + self.signature_at(block) + pair_neg(self.target_at(block))
                m += step
                self._values[m] = value
            return self._values[n]

    def __getitem__(self, i: int) -> ClassPair:
        return self.at_position(self.position(i))

    def step_holds(self, i: int) -> bool:
        """R at sigma(i) minus R at i is ~ the target at i minus the signature at i."""
        n = self.position(i)
        difference = self.at_position(n + 1) + pair_neg(self.at_position(n))
        return sim(difference, pair_neg(self.signature_at(i)) + self.target_at(i))


def rs_sequence(g: Homeo, target: Target, sigma: Perm) -> RSSequence:
    return RSSequence(g, target, sigma)


class BlockShuffle:
    """Where B'_k and C'_k sit in block k, and the resulting chart of the conjugator."""

    def __init__(self, g: Homeo, sequence: RSSequence, sigma: Perm, avoid: Homeo | None = None) -> None:
        self.blocks = g.blocks
        self.g = g
        self.sequence = sequence
        self.sigma = sigma
        self._watched = [g, inverse(g)]
        self._avoided = [] if avoid is None else [avoid, inverse(avoid)]
        self._starts: dict[int, int] = {}
        self._placements: dict[tuple[str, int], dict[PieceKey, Interval | None]] = {}
        self._lock = threading.RLock()

    def width(self, c: HomeoClass) -> int:
        """Units of w^(alpha-1) taken by the canonical realization of c."""
        if c.is_empty:
            return 0
        return c.degree if c.rank == self.blocks.alpha - 1 else 1

    def _tail_unit(self, maps: list[Homeo], k: int) -> int:
        return max(self.blocks.unit_of(tail_piece(m, k).src_lo, k) for m in maps) + 1

    def threshold(self, k: int) -> int:
        """First unit of block k past every non-tail piece of g and of the avoided map."""
        value = self._tail_unit(self._watched, k)
        if self._avoided:
            neighbours = {k, self.sigma.apply(k), self.sigma.inverse_apply(k)}
            value = max(value, *(self._tail_unit(self._avoided, n) for n in neighbours))
        return value

    def drift(self, k: int) -> int:
        """Units by which the tail piece of g shifts block k into block sigma(k)."""
        tail = tail_piece(self.g, k)
        return self.blocks.unit_of(tail.dst_lo, self.sigma.apply(k)) - self.blocks.unit_of(tail.src_lo, k)

    def b_classes(self, k: int) -> list[tuple[PieceKey, HomeoClass]]:
        pairs = [self.sequence[j] for j in range(1, k + 1)]
        return [(("B", j), pairs[j - 1].p) for j in range(1, k + 1)] + [
            (("C", j), pairs[j - 1].q) for j in range(1, k)
        ]

    def c_classes(self, k: int) -> list[tuple[PieceKey, HomeoClass]]:
        pairs = [self.sequence[j] for j in range(1, k + 1)]
        return [(("B'", j), pairs[j - 1].p) for j in range(1, k)] + [
            (("C'", j), pairs[j - 1].q) for j in range(1, k + 1)
        ]

    def c_width(self, k: int) -> int:
        return sum(self.width(c) for _, c in self.c_classes(k))

    def start(self, k: int) -> int:
        """First unit of C'_k; B'_k follows it directly."""
        n = self.sequence.position(k)
        with self._lock:
            if n in self._starts:
                return self._starts[n]
            if 0 not in self._starts:
                self._starts[0] = self.threshold(1)
            step = 1 if n > 0 else -1
            m = n
            while m not in self._starts:
                m -= step
            while m != n:
                here = self.sequence.block_at(m)
                there = self.sequence.block_at(m + step)
                if step > 0:
                    value = max(self.threshold(there), self._starts[m] + self.drift(here) + self.c_width(here))
                else:
                    value = max(self.threshold(there), self._starts[m] + self.c_width(here) - self.drift(there))
                m += step
                self._starts[m] = value
            return self._starts[n]

    def _place(self, k: int, first_unit: int, classes: list[tuple[PieceKey, HomeoClass]]) -> dict[PieceKey, Interval | None]:
        placed: dict[PieceKey, Interval | None] = {}
        unit = first_unit
        for key, c in classes:
            span = self.width(c)
            if not span:
                placed[key] = None
                continue
            lo = self.blocks.unit_point(k, unit)
            placed[key] = (lo, add(lo, omega_pow(c.rank, c.degree)))
            unit += span
        return placed

    def c_prime(self, k: int) -> dict[PieceKey, Interval | None]:
        with self._lock:
            cached = self._placements.get(("C'", k))
            if cached is None:
                cached = self._place(k, self.start(k), self.c_classes(k))
                self._placements[("C'", k)] = cached
            return cached

    def b_prime(self, k: int) -> dict[PieceKey, Interval | None]:
        with self._lock:
            cached = self._placements.get(("B'", k))
            if cached is None:
                cached = self._place(k, self.start(k) + self.c_width(k), self.b_classes(k))
                self._placements[("B'", k)] = cached
            return cached

    def region(self, placed: dict[PieceKey, Interval | None]) -> ClopenSet:
        return make(self.blocks.space, [span for span in placed.values() if span is not None])

    def chart(self, k: int) -> Chart:
        blocks = self.blocks
        first = self.start(k)
        held, received = self.b_prime(k), self.c_prime(k)
        pieces: list[Piece] = []
        floor = blocks.unit_point(k, first)
        if first:
            pieces.append(Piece(blocks.base(k), floor, blocks.base(k), floor))
        rest = ClopenSet(blocks.space, ((floor, blocks.top(k)),))
        try:
            pieces.extend(build_homeo_between(rest - self.region(held), rest - self.region(received)))
            upper = self.c_prime(k + 1)
            for j in range(1, k + 1):
                self._route(pieces, held[("B", j)], upper[("B'", j)])
            if k > 1:
                lower = self.c_prime(k - 1)
                for j in range(1, k):
                    self._route(pieces, held[("C", j)], lower[("C'", j)])
            return Chart(pieces)
        except (ChartError, HomeoError) as exc:
            raise ConstructionError(f"conjugator chart for block {k}: {exc}") from exc

    @staticmethod
    def _route(pieces: list[Piece], source: Interval | None, target: Interval | None) -> None:
        if (source is None) != (target is None):
            raise ConstructionError("a routed piece and its slot disagree on emptiness")
        if source is not None and target is not None:
            pieces.append(Piece(source[0], source[1], target[0], target[1]))


class ConjugatorMap(LazyBlockMap):
    """The conjugator together with the sequence and layout it was built from."""

    def __init__(self, shuffle: BlockShuffle) -> None:
        super().__init__(shuffle.blocks, shuffle.chart, lambda j: (j - 1, j, j + 1), label="conjugator")
        self.shuffle = shuffle
        self.sequence = shuffle.sequence


def realize_conjugator(
    g: Homeo,
    target: Target,
    sigma: Perm,
    bound: int,
    avoid: Homeo | None = None,
) -> ConjugatorMap:
    """h with pi(h) = id and the signature of h^-1 g h at i ~ target(i).

    g must induce the single cycle sigma on block indices; this is checked on
    blocks up to bound. avoid, when given, keeps the moved pieces clear of the
    non-tail region of that map as well.
    """
    require_single_cycle(sigma)
    for i in range(1, bound + 1):
        if pi_of(g, i) != sigma(i):
            raise PreconditionError(f"g sends block {i} to {pi_of(g, i)}, sigma to {sigma(i)}")
    sequence = RSSequence(g, target, sigma)
    for i in range(1, bound + 2):
        sequence.target_at(i)
    shuffle = BlockShuffle(g, sequence, sigma, avoid)
    logger.debug("conjugator built for %s up to block %d", sigma.describe(), bound)
    return ConjugatorMap(shuffle)


def conjugate(h: Homeo, g: Homeo) -> Homeo:
    """h^-1 g h."""
    return compose(inverse(h), g, h)


def verify_conjugator(g: Homeo, target: Target, sigma: Perm, h: Homeo, bound: int) -> list[CheckResult]:
    sequence = h.sequence if isinstance(h, ConjugatorMap) else RSSequence(g, target, sigma)
    recurrence = CheckResult("rs-recurrence")
    fixed = CheckResult("pi-trivial")
    reached = CheckResult("signature-target")
    conjugated = conjugate(h, g)
    for i in range(1, bound + 1):
        recurrence.record(sequence.step_holds(i), f"block {i}")
        fixed.record(pi_of(h, i) == i, f"block {i}")
        got = signature(conjugated, i).pair
        reached.record(sim(got, target(i)), f"block {i}: {got} vs {target(i)}")
    return [recurrence, fixed, reached]
