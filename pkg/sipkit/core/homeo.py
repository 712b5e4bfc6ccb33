"""Finitely represented homeomorphisms of [1, w^(alpha+1)] and their block data."""

from __future__ import annotations

import logging
import threading
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Callable, Collection, Iterable, Mapping

from sipkit.core.chart import Chart, ChartError, Piece, compose_charts, identity_chart
from sipkit.core.clopen import ClopenSet, HomeoClass, Space, homeo_class, make
from sipkit.core.ordinal import ONE, ZERO, Ordinal, add, left_sub, omega_pow
from sipkit.core.perm import Perm, is_identity, support_bound
from sipkit.core.sigcalc import ClassPair

logger = logging.getLogger(__name__)


class HomeoError(ValueError):
    """Raised for points outside X, class mismatches and non-blockwise inputs."""


class HomeoInvariantError(RuntimeError):
    """Raised when a represented map breaks its own contract."""


@dataclass(frozen=True)
class BlockSystem:
    """Blocks A_n = (w^alpha*(n-1), w^alpha*n] partitioning [1, w^(alpha+1)) ."""

    alpha: int

    def __post_init__(self) -> None:
        if self.alpha < 1:
            raise HomeoError(f"block rank alpha must be at least 1, got {self.alpha}")

    @property
    def delta(self) -> Ordinal:
        return omega_pow(self.alpha + 1)

    @property
    def space(self) -> Space:
        return Space(self.delta)

    @property
    def unit(self) -> Ordinal:
        return omega_pow(self.alpha - 1)

    def base(self, n: int) -> Ordinal:
        self._check_index(n)
        return omega_pow(self.alpha, n - 1)

    def top(self, n: int) -> Ordinal:
        self._check_index(n)
        return omega_pow(self.alpha, n)

    def block(self, n: int) -> ClopenSet:
        return ClopenSet(self.space, ((self.base(n), self.top(n)),))

    def blocks(self, first: int, last: int) -> ClopenSet:
        """A_first through A_last as one set."""
        return ClopenSet(self.space, ((self.base(first), self.top(last)),))

    def block_of(self, x: Ordinal) -> int | None:
        """Index of the block holding x; None for delta itself."""
        self.check_point(x)
        if x == self.delta:
            return None
        terms = x.terms
        if terms[0][0] == self.alpha:
            count, rest = terms[0][1], terms[1:]
        else:
            count, rest = 0, terms
        return count if not rest else count + 1

    def check_point(self, x: Ordinal) -> None:
        if not x or x > self.delta:
            raise HomeoError(f"{x} is outside [1, {self.delta}]")

    def local(self, x: Ordinal, n: int | None = None) -> Ordinal:
        """phi_n^-1(x): the coordinate of x inside its block."""
        index = self.block_of(x) if n is None else n
        if index is None:
            raise HomeoError("delta belongs to no block")
        return left_sub(self.base(index), x)

    def phi(self, n: int, beta: Ordinal) -> Ordinal:
        if not beta or beta > omega_pow(self.alpha):
            raise HomeoError(f"phi_{n} is defined on [1, w^{self.alpha}], got {beta}")
        return add(self.base(n), beta)

    def phi_ij(self, i: int, j: int, x: Ordinal) -> Ordinal:
        if self.block_of(x) != i:
            raise HomeoError(f"{x} is not in block {i}")
        return self.phi(j, self.local(x, i))

    def unit_of(self, x: Ordinal, n: int) -> int:
        """u such that x lies in block n at local coordinate w^(alpha-1)*u + smaller terms."""
        if x == self.base(n):
            return 0
        for exponent, coefficient in self.local(x, n).terms:
            if exponent == self.alpha - 1:
                return coefficient
            if exponent < self.alpha - 1:
                return 0
        raise HomeoError(f"{x} is the top of block {n}")

    def unit_point(self, n: int, u: int) -> Ordinal:
        """base(n) + w^(alpha-1)*u."""
        return add(self.base(n), omega_pow(self.alpha - 1, u))

    def canonical_chart(self, i: int, j: int) -> Chart:
        """phi_ij as a one-piece chart."""
        return Chart([Piece(self.base(i), self.top(i), self.base(j), self.top(j))])

    def target_block(self, piece: Piece) -> int:
        first = self.block_of(add(piece.dst_lo, ONE))
        last = self.block_of(piece.dst_hi)
        if first != last or first is None:
            raise HomeoInvariantError(f"piece {piece} crosses a block boundary")
        return first

    def _check_index(self, n: int) -> None:
        if n < 1:
            raise HomeoError(f"block indices start at 1, got {n}")


def _spans(intervals: Iterable[tuple[Ordinal, Ordinal]]) -> list[tuple[Ordinal, Ordinal]]:
    merged: list[tuple[Ordinal, Ordinal]] = []
    for lo, hi in sorted(intervals):
        if merged and merged[-1][1] == lo:
            merged[-1] = (merged[-1][0], hi)
        else:
            merged.append((lo, hi))
    return merged


class Homeo(ABC):
    """A homeomorphism of X given by one finite chart per block."""

    def __init__(self, blocks: BlockSystem) -> None:
        self.blocks = blocks
        self._charts: dict[int, Chart] = {}
        self._lock = threading.Lock()

    def block_chart(self, i: int) -> Chart:
        """Memoized chart whose sources partition A_i."""
        with self._lock:
            cached = self._charts.get(i)
        if cached is not None:
            return cached
        chart = self._build_block_chart(i)
        with self._lock:
            return self._charts.setdefault(i, chart)

    @abstractmethod
    def _build_block_chart(self, i: int) -> Chart:
        ...

    @abstractmethod
    def sources_of(self, j: int) -> frozenset[int]:
        """Blocks whose charts send points into A_j."""

    def moved_bound(self) -> int | None:
        """A block index past which every block chart is the identity, or None if unknown."""
        return None

    def eval(self, x: Ordinal) -> Ordinal:
        index = self.blocks.block_of(x)
        if index is None:
            return x
        try:
            return self.block_chart(index).apply(x)
        except ChartError as exc:
            raise HomeoInvariantError(f"block {index} chart does not cover {x}") from exc

    def eval_inv(self, y: Ordinal) -> Ordinal:
        index = self.blocks.block_of(y)
        if index is None:
            return y
        for source in sorted(self.sources_of(index)):
            piece = self.block_chart(source).find_target(y)
            if piece is not None:
                return piece.apply_inverse(y)
        raise HomeoInvariantError(f"no source block maps onto {y}")

    def __call__(self, x: Ordinal) -> Ordinal:
        return self.eval(x)

    def describe(self) -> str:
        return f"({type(self).__name__.lower()})"


class Identity(Homeo):
    def _build_block_chart(self, i: int) -> Chart:
        return identity_chart(self.blocks.base(i), self.blocks.top(i))

    def moved_bound(self) -> int | None:
        return 0

    def sources_of(self, j: int) -> frozenset[int]:
        return frozenset((j,))

    def eval(self, x: Ordinal) -> Ordinal:
        self.blocks.check_point(x)
        return x

    def eval_inv(self, y: Ordinal) -> Ordinal:
        self.blocks.check_point(y)
        return y

    def describe(self) -> str:
        return "(identity)"


class ChartMap(Homeo):
    """A single global chart partitioning (0, delta] on both sides."""

    def __init__(self, blocks: BlockSystem, chart: Chart) -> None:
        super().__init__(blocks)
        whole = [(ZERO, blocks.delta)]
        if _spans((p.src_lo, p.src_hi) for p in chart) != whole:
            raise HomeoError("chart sources do not partition (0, delta]")
        if _spans((p.dst_lo, p.dst_hi) for p in chart) != whole:
            raise HomeoError("chart targets do not partition (0, delta]")
        tails = [p for p in chart if p.src_hi == blocks.delta]
        if tails[0].dst_hi != blocks.delta:
            raise HomeoError("the piece ending at delta must also end at delta on the target side")
        self.chart = chart

    def _build_block_chart(self, i: int) -> Chart:
        return self.chart.clip(self.blocks.base(i), self.blocks.top(i))

    def sources_of(self, j: int) -> frozenset[int]:
        found: set[int] = set()
        for piece in self.chart:
            clipped = piece.clip_target(self.blocks.base(j), self.blocks.top(j))
            if clipped is None:
                continue
            first = self.blocks.block_of(add(clipped.src_lo, ONE))
            last = self.blocks.block_of(clipped.src_hi)
            found.update(range(first, last + 1))
        return frozenset(found)

    def moved_bound(self) -> int | None:
        bound = 0
        for piece in self.chart:
            if piece.is_identity:
                continue
            if piece.src_hi != self.blocks.delta:
                bound = max(bound, self.blocks.block_of(piece.src_hi))
                continue
            # past both starting blocks a tail piece shifts whole blocks, so one block top decides it
            starts = (self.blocks.block_of(add(piece.src_lo, ONE)), self.blocks.block_of(add(piece.dst_lo, ONE)))
            k = max(starts) + 1
            if piece.apply(self.blocks.top(k)) != self.blocks.top(k):
                return None
            bound = max(bound, k)
        return bound

    def eval(self, x: Ordinal) -> Ordinal:
        self.blocks.check_point(x)
        return self.chart.apply(x)

    def eval_inv(self, y: Ordinal) -> Ordinal:
        self.blocks.check_point(y)
        return self.chart.apply_inverse(y)

    def describe(self) -> str:
        return self.chart.describe()


class BlockMap(Homeo):
    """Sends A_i to A_sigma(i) by phi, except on finitely many overridden blocks."""

    def __init__(self, blocks: BlockSystem, sigma: Perm, overrides: Mapping[int, Chart] | None = None) -> None:
        super().__init__(blocks)
        self.sigma = sigma
        self.overrides = dict(overrides or {})
        self._override_sources: dict[int, set[int]] = {}
        targets: list[tuple[Ordinal, Ordinal]] = []
        for i, chart in self.overrides.items():
            if _spans((p.src_lo, p.src_hi) for p in chart) != [(blocks.base(i), blocks.top(i))]:
                raise HomeoError(f"override chart for block {i} does not partition A_{i}")
            for piece in chart:
                self._override_sources.setdefault(blocks.target_block(piece), set()).add(i)
                targets.append((piece.dst_lo, piece.dst_hi))
        expected = make(blocks.space, [(blocks.base(sigma(i)), blocks.top(sigma(i))) for i in self.overrides])
        if _spans(targets) != list(expected.intervals):
            raise HomeoError("override targets do not partition the blocks A_sigma(i) they replace")

    def _build_block_chart(self, i: int) -> Chart:
        chart = self.overrides.get(i)
        return chart if chart is not None else self.blocks.canonical_chart(i, self.sigma(i))

    def sources_of(self, j: int) -> frozenset[int]:
        origin = self.sigma.inverse_apply(j)
        if origin not in self.overrides:
            return frozenset((origin,))
        return frozenset(self._override_sources.get(j, ()))

    def moved_bound(self) -> int | None:
        moved = support_bound(self.sigma)
        return None if moved is None else max([moved, *self.overrides])

    def describe(self) -> str:
        overrides = " ".join(
            f"(override {i} {chart.describe()})" for i, chart in sorted(self.overrides.items())
        )
        head = f"(blockmap {self.sigma.describe()}"
        return f"{head} {overrides})" if overrides else f"{head})"


class LazyBlockMap(Homeo):
    """Charts produced on demand by a factory; fan_in(j) must contain every source of A_j."""

    def __init__(
        self,
        blocks: BlockSystem,
        factory: Callable[[int], Chart],
        fan_in: Callable[[int], Iterable[int]],
        label: str = "lazy",
    ) -> None:
        super().__init__(blocks)
        self._factory = factory
        self._fan_in = fan_in
        self.label = label

    def _build_block_chart(self, i: int) -> Chart:
        return self._factory(i)

    def sources_of(self, j: int) -> frozenset[int]:
        return frozenset(k for k in self._fan_in(j) if k >= 1)

    def describe(self) -> str:
        return f"({self.label})"


class Compose(Homeo):
    """outer after inner."""

    def __init__(self, outer: Homeo, inner: Homeo) -> None:
        if outer.blocks != inner.blocks:
            raise HomeoError("cannot compose maps over different block systems")
        super().__init__(outer.blocks)
        self.outer = outer
        self.inner = inner

    def _build_block_chart(self, i: int) -> Chart:
        grouped: dict[int, list[Piece]] = {}
        for piece in self.inner.block_chart(i):
            grouped.setdefault(self.blocks.target_block(piece), []).append(piece)
        pieces: list[Piece] = []
        for j, group in sorted(grouped.items()):
            pieces.extend(compose_charts(self.outer.block_chart(j), Chart(group)))
        return Chart(pieces).normalized()

    def sources_of(self, j: int) -> frozenset[int]:
        found: set[int] = set()
        for k in self.outer.sources_of(j):
            found.update(self.inner.sources_of(k))
        return frozenset(found)

    def moved_bound(self) -> int | None:
        outer, inner = self.outer.moved_bound(), self.inner.moved_bound()
        return None if outer is None or inner is None else max(outer, inner)

    def eval(self, x: Ordinal) -> Ordinal:
        return self.outer.eval(self.inner.eval(x))

    def eval_inv(self, y: Ordinal) -> Ordinal:
        return self.inner.eval_inv(self.outer.eval_inv(y))

    def describe(self) -> str:
        return f"(compose {self.outer.describe()} {self.inner.describe()})"


class Inverse(Homeo):
    def __init__(self, base: Homeo) -> None:
        super().__init__(base.blocks)
        self.base = base

    def _build_block_chart(self, i: int) -> Chart:
        pieces = [
            piece.inverse()
            for source in sorted(self.base.sources_of(i))
            for piece in self.base.block_chart(source)
            if self.blocks.target_block(piece) == i
        ]
        if _spans((p.src_lo, p.src_hi) for p in pieces) != [(self.blocks.base(i), self.blocks.top(i))]:
            raise HomeoInvariantError(f"sources_of({i}) misses part of A_{i}")
        return Chart(pieces).normalized()

    def sources_of(self, j: int) -> frozenset[int]:
        return frozenset(self.blocks.target_block(piece) for piece in self.base.block_chart(j))

    def moved_bound(self) -> int | None:
        return self.base.moved_bound()

    def eval(self, x: Ordinal) -> Ordinal:
        return self.base.eval_inv(x)

    def eval_inv(self, y: Ordinal) -> Ordinal:
        return self.base.eval(y)

    def describe(self) -> str:
        return f"(inverse {self.base.describe()})"


def compose(*maps: Homeo) -> Homeo:
    """compose(f, g, h) evaluates f(g(h(x)))."""
    if not maps:
        raise HomeoError("compose needs at least one map")
    result = maps[-1]
    for outer in reversed(maps[:-1]):
        if isinstance(outer, Identity):
            continue
        result = outer if isinstance(result, Identity) else Compose(outer, result)
    return result


def inverse(g: Homeo) -> Homeo:
    if isinstance(g, Identity):
        return g
    if isinstance(g, Inverse):
        return g.base
    return Inverse(g)


def lift(blocks: BlockSystem, sigma: Perm) -> Homeo:
    """Blockwise phi-lift of sigma."""
    if is_identity(sigma):
        return Identity(blocks)
    return BlockMap(blocks, sigma)


def pi_of(g: Homeo, i: int) -> int:
    """pi(g)(i): the block whose top is the image of the top of A_i."""
    image = g.eval(g.blocks.top(i))
    target = g.blocks.block_of(image)
    if target is None or image != g.blocks.top(target):
        raise HomeoInvariantError(f"top of A_{i} is sent to {image}, which is not a block top")
    return target


class InducedPerm(Perm):
    """pi(g) as a permutation of block indices."""

    def __init__(self, homeo: Homeo) -> None:
        self.homeo = homeo

    def apply(self, i: int) -> int:
        return pi_of(self.homeo, i)

    def inverse_apply(self, j: int) -> int:
        for i in sorted(self.homeo.sources_of(j)):
            if pi_of(self.homeo, i) == j:
                return i
        raise HomeoInvariantError(f"no block is sent onto A_{j}")

    def describe(self) -> str:
        return f"(pi {self.homeo.describe()})"


@dataclass(frozen=True)
class Signature:
    """Deficiency sets of g at block i: P = A_j minus gA_i, Q = A_i minus g^-1 A_j."""

    block: int
    target: int
    p: ClopenSet
    q: ClopenSet

    @property
    def pair(self) -> ClassPair:
        return ClassPair(homeo_class(self.p), homeo_class(self.q))


def signature(g: Homeo, i: int) -> Signature:
    blocks = g.blocks
    j = pi_of(g, i)
    staying = [piece for piece in g.block_chart(i) if blocks.target_block(piece) == j]
    images = make(blocks.space, [(p.dst_lo, p.dst_hi) for p in staying])
    sources = make(blocks.space, [(p.src_lo, p.src_hi) for p in staying])
    return Signature(i, j, blocks.block(j) - images, blocks.block(i) - sources)


def tail_piece(g: Homeo, i: int) -> Piece:
    """The chart piece of A_i containing the top of A_i."""
    top = g.blocks.top(i)
    for piece in g.block_chart(i):
        if piece.src_hi == top:
            return piece
    raise HomeoInvariantError(f"block {i} chart has no piece at its top")


def image(g: Homeo, p: ClopenSet) -> ClopenSet:
    """g(P) for a bounded clopen P."""
    blocks = g.blocks
    if not p.bounded:
        raise HomeoError("image is computed for bounded sets only")
    pieces: list[tuple[Ordinal, Ordinal]] = []
    for lo, hi in p.intervals:
        for i in range(blocks.block_of(add(lo, ONE)), blocks.block_of(hi) + 1):
            for piece in g.block_chart(i).clip(lo, hi):
                pieces.append((piece.dst_lo, piece.dst_hi))
    return make(blocks.space, pieces)


def preimage(g: Homeo, p: ClopenSet) -> ClopenSet:
    return image(inverse(g), p)


def first_disagreement(g: Homeo, h: Homeo, sample: Iterable[Ordinal]) -> Ordinal | None:
    for x in sample:
        if g.eval(x) != h.eval(x):
            return x
    return None


def eq_on(g: Homeo, h: Homeo, sample: Iterable[Ordinal]) -> bool:
    """Pointwise agreement on a finite sample."""
    return first_disagreement(g, h, sample) is None


@dataclass(frozen=True)
class Verdict:
    """A decision that is either exact or checked on blocks up to a bound."""

    holds: bool
    exact: bool
    bound: int | None = None

    def __bool__(self) -> bool:
        return self.holds

    def __str__(self) -> str:
        scope = "exact" if self.exact else f"up to block {self.bound}"
        return f"{str(self.holds).lower()} ({scope})"


def _blocks_to_check(g: Homeo, b: ClopenSet, bound: int) -> tuple[int, bool]:
    if b.bounded:
        return (g.blocks.block_of(b.max_point()) if b else 0), True
    moved = g.moved_bound()
    if moved is not None:
        return moved, True
    return bound, False


def fixes_pointwise(g: Homeo, b: ClopenSet, bound: int) -> Verdict:
    last, exact = _blocks_to_check(g, b, bound)
    for i in range(1, last + 1):
        region = b & g.blocks.block(i)
        if region and not g.block_chart(i).clip_to(region).is_identity:
            return Verdict(False, True)
    return Verdict(True, exact, None if exact else bound)


def setwise_stabilizes(g: Homeo, b: ClopenSet, bound: int) -> Verdict:
    if b.bounded:
        return Verdict(image(g, b) == b, True)
    backward = inverse(g)
    for i in range(1, bound + 1):
        region = b & g.blocks.block(i)
        if not region:
            continue
        if not image(g, region).subset_of(b) or not image(backward, region).subset_of(b):
            return Verdict(False, True)
    return Verdict(True, False, bound)


def in_K_star(g: Homeo, bound: int) -> Verdict:
    """pi(g) fixes every block index up to the bound."""
    holds = all(pi_of(g, i) == i for i in range(1, bound + 1))
    return Verdict(holds, not holds, bound)


def in_K(g: Homeo, bound: int) -> Verdict:
    """g maps each A_i onto itself, for i up to the bound."""
    for i in range(1, bound + 1):
        if any(g.blocks.target_block(piece) != i for piece in g.block_chart(i)):
            return Verdict(False, True)
    return Verdict(True, False, bound)


def blockwise_chart(g: Homeo, i: int) -> Chart:
    """g's chart on A_i, which must map A_i onto itself."""
    chart = g.block_chart(i)
    if any(g.blocks.target_block(piece) != i for piece in chart):
        raise HomeoError(f"map does not fix block {i} setwise")
    return chart


def restrict_to_blocks(h: Homeo, selection: Collection[int] | Callable[[int], bool]) -> Homeo:
    """Acts as h on the selected blocks and as the identity elsewhere; h must be blockwise."""
    chosen = selection if callable(selection) else selection.__contains__
    blocks = h.blocks

    def factory(i: int) -> Chart:
        if chosen(i):
            return blockwise_chart(h, i)
        return identity_chart(blocks.base(i), blocks.top(i))

    return LazyBlockMap(blocks, factory, lambda j: (j,), label="restrict")


def stabilizes_block_family(g: Homeo, degree: int) -> bool:
    """True iff g permutes the blocks A_1 .. A_degree among themselves."""
    for i in range(1, degree + 1):
        j = pi_of(g, i)
        if j > degree:
            return False
        if any(g.blocks.target_block(piece) != j for piece in g.block_chart(i)):
            return False
    return True


def monomial_pieces(p: ClopenSet) -> list[tuple[Ordinal, Ordinal, int]]:
    """Split p into pieces (x, x + w^e] of type w^e + 1 (singletons when e = 0)."""
    pieces: list[tuple[Ordinal, Ordinal, int]] = []
    for lo, hi in p.intervals:
        cursor = lo
        for exponent, coefficient in left_sub(lo, hi).terms:
            step = omega_pow(exponent)
            for _ in range(coefficient):
                following = add(cursor, step)
                pieces.append((cursor, following, exponent))
                cursor = following
    return pieces


def _by_rank(p: ClopenSet) -> dict[int, list[tuple[Ordinal, Ordinal]]]:
    grouped: dict[int, list[tuple[Ordinal, Ordinal]]] = {}
    for lo, hi, exponent in monomial_pieces(p):
        grouped.setdefault(exponent, []).append((lo, hi))
    return grouped


def _donate(grouped: dict[int, list[tuple[Ordinal, Ordinal]]], rank: int, exponent: int, count: int) -> None:
    # Cutting w^e pieces off the front of a w^rank piece leaves a piece of the same type.
    lo, hi = grouped[rank][0]
    step = omega_pow(exponent)
    emitted = []
    for _ in range(count):
        following = add(lo, step)
        emitted.append((lo, following))
        lo = following
    grouped[rank][0] = (lo, hi)
    grouped[exponent] = sorted(emitted + grouped.get(exponent, []))


def build_homeo_between(b: ClopenSet, c: ClopenSet) -> Chart:
    """A chart whose sources partition b and whose targets partition c."""
    target_class: HomeoClass = homeo_class(b)
    if target_class != homeo_class(c):
        raise HomeoError(f"classes differ: {target_class} vs {homeo_class(c)}")
    if target_class.is_empty:
        return Chart()
    source, destination = _by_rank(b), _by_rank(c)
    rank = target_class.rank
    for exponent in range(rank - 1, -1, -1):
        surplus = len(source.get(exponent, [])) - len(destination.get(exponent, []))
        if surplus > 0:
            _donate(destination, rank, exponent, surplus)
        elif surplus < 0:
            _donate(source, rank, exponent, -surplus)
    pieces = [
        Piece(src[0], src[1], dst[0], dst[1])
        for exponent in sorted(source)
        for src, dst in zip(source[exponent], destination[exponent], strict=True)
    ]
    return Chart(pieces).normalized()


def swap(blocks: BlockSystem, first: tuple[Ordinal, Ordinal], second: tuple[Ordinal, Ordinal]) -> ChartMap:
    """Exchange two disjoint bounded intervals of equal order type, fixing everything else."""
    (a, b), (c, d) = sorted([first, second])
    if not b <= c or d >= blocks.delta:
        raise HomeoError("swap needs disjoint bounded intervals")
    pieces = [Piece(a, b, c, d), Piece(c, d, a, b), Piece(d, blocks.delta, d, blocks.delta)]
    if a:
        pieces.append(Piece(ZERO, a, ZERO, a))
    if b < c:
        pieces.append(Piece(b, c, b, c))
    return ChartMap(blocks, Chart(pieces))


def unit_push(blocks: BlockSystem, i: int) -> ChartMap:
    """Moves the first unit of A_i to the front of A_(i+1), shifting A_(i+1) up by one unit."""
    base, top = blocks.base(i), blocks.top(i)
    first_unit = add(base, blocks.unit)
    pieces = [
        Piece(first_unit, top, base, top),
        Piece(base, first_unit, top, add(top, blocks.unit)),
        Piece(top, blocks.delta, add(top, blocks.unit), blocks.delta),
    ]
    if base:
        pieces.append(Piece(ZERO, base, ZERO, base))
    return ChartMap(blocks, Chart(pieces))
