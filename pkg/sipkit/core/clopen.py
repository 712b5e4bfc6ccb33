"""Clopen subsets of [1, delta], Cantor-Bendixson derivatives and the ideal tower."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from sipkit.core.ordinal import (
    ONE,
    ZERO,
    Ordinal,
    OrdinalError,
    OrdinalParseError,
    add,
    divmod_omega,
    format_ordinal,
    leading_term,
    left_sub,
    omega_pow,
    parse_ordinal,
)

Interval = tuple[Ordinal, Ordinal]


class ClopenError(ValueError):
    """Raised for malformed intervals, mismatched spaces or missing capacity."""


class ClopenParseError(ClopenError):
    """Raised when clopen literal text is malformed."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class Space:
    """The ambient interval [1, delta]; delta = 0 is the empty derived space."""

    delta: Ordinal

    def full(self) -> "ClopenSet":
        return ClopenSet(self, ((ZERO, self.delta),)) if self.delta else ClopenSet(self)

    def empty(self) -> "ClopenSet":
        return ClopenSet(self)

    def derived(self) -> "Space":
        return Space(divmod_omega(self.delta)[0])


@dataclass(frozen=True)
class HomeoClass:
    """Homeomorphism invariant (rank, degree); degree 0 encodes the empty class."""

    rank: int = 0
    degree: int = 0

    def __post_init__(self) -> None:
        if self.rank < 0 or self.degree < 0:
            raise ClopenError("rank and degree are natural numbers")
        if self.degree == 0 and self.rank != 0:
            raise ClopenError("the empty class has no rank")

    @property
    def is_empty(self) -> bool:
        return self.degree == 0

    def __str__(self) -> str:
        return "E" if self.is_empty else f"({self.rank},{self.degree})"


EMPTY = HomeoClass()


@dataclass(frozen=True)
class ClopenSet:
    """A finite union of separated intervals (lo, hi] inside a space."""

    space: Space
    intervals: tuple[Interval, ...] = ()

    def __post_init__(self) -> None:
        previous_hi: Ordinal | None = None
        for lo, hi in self.intervals:
            if not lo < hi or hi > self.space.delta:
                raise ClopenError(f"bad interval ({lo}, {hi}] in [1, {self.space.delta}]")
            if previous_hi is not None and lo <= previous_hi:
                raise ClopenError("intervals must be sorted and separated; use make()")
            previous_hi = hi

    def __contains__(self, x: Ordinal) -> bool:
        return any(lo < x <= hi for lo, hi in self.intervals)

    def __bool__(self) -> bool:
        return bool(self.intervals)

    def __or__(self, other: "ClopenSet") -> "ClopenSet":
        return union(self, other)

    def __and__(self, other: "ClopenSet") -> "ClopenSet":
        return intersect(self, other)

    def __sub__(self, other: "ClopenSet") -> "ClopenSet":
        return difference(self, other)

    def __str__(self) -> str:
        return format_clopen(self)

    @property
    def bounded(self) -> bool:
        return not self.intervals or self.intervals[-1][1] < self.space.delta

    def subset_of(self, other: "ClopenSet") -> bool:
        return not difference(self, other)

    def max_point(self) -> Ordinal:
        if not self.intervals:
            raise ClopenError("empty set has no maximum")
        return self.intervals[-1][1]


def make(space: Space, raw: Iterable[Interval]) -> ClopenSet:
    """Build a canonical ClopenSet, merging overlapping and adjacent intervals."""
    pending = []
    for lo, hi in raw:
        if not lo < hi:
            raise ClopenError(f"interval ({lo}, {hi}] is empty or reversed")
        if hi > space.delta:
            raise ClopenError(f"interval ({lo}, {hi}] exceeds delta = {space.delta}")
        pending.append((lo, hi))
    pending.sort()
    merged: list[Interval] = []
    for lo, hi in pending:
        if merged and lo <= merged[-1][1]:
            if hi > merged[-1][1]:
                merged[-1] = (merged[-1][0], hi)
        else:
            merged.append((lo, hi))
    return ClopenSet(space, tuple(merged))


def _same_space(a: ClopenSet, b: ClopenSet) -> Space:
    if a.space != b.space:
        raise ClopenError(f"spaces differ: {a.space.delta} vs {b.space.delta}")
    return a.space


def union(a: ClopenSet, b: ClopenSet) -> ClopenSet:
    return make(_same_space(a, b), a.intervals + b.intervals)


def intersect(a: ClopenSet, b: ClopenSet) -> ClopenSet:
    space = _same_space(a, b)
    result: list[Interval] = []
    i = j = 0
    while i < len(a.intervals) and j < len(b.intervals):
        lo = max(a.intervals[i][0], b.intervals[j][0])
        hi = min(a.intervals[i][1], b.intervals[j][1])
        if lo < hi:
            result.append((lo, hi))
        if a.intervals[i][1] < b.intervals[j][1]:
            i += 1
        else:
            j += 1
    return make(space, result)


def complement(a: ClopenSet) -> ClopenSet:
    gaps: list[Interval] = []
    cursor = ZERO
    for lo, hi in a.intervals:
        if cursor < lo:
            gaps.append((cursor, lo))
        cursor = hi
    if cursor < a.space.delta:
        gaps.append((cursor, a.space.delta))
    return ClopenSet(a.space, tuple(gaps))


def difference(a: ClopenSet, b: ClopenSet) -> ClopenSet:
    return intersect(a, complement(b))


def interval_type(lo: Ordinal, hi: Ordinal) -> Ordinal:
    """Order type of (lo, hi]."""
    return add(left_sub(add(lo, ONE), hi), ONE)


def order_type(p: ClopenSet) -> Ordinal:
    total = ZERO
    for lo, hi in p.intervals:
        total = add(total, interval_type(lo, hi))
    return total


def cb_derivative(p: ClopenSet) -> ClopenSet:
    """Non-isolated points of p in the coordinate y with x = w*y."""
    derived: list[Interval] = []
    for lo, hi in p.intervals:
        low_quotient, _ = divmod_omega(lo)
        high_quotient, _ = divmod_omega(hi)
        if high_quotient > low_quotient:
            derived.append((low_quotient, high_quotient))
    return make(p.space.derived(), derived)


def iterate_derivative(p: ClopenSet, times: int) -> ClopenSet:
    for _ in range(times):
        p = cb_derivative(p)
    return p


def homeo_class(p: ClopenSet) -> HomeoClass:
    if not p:
        return EMPTY
    return HomeoClass(*leading_term(order_type(p)))


def homeo_class_by_derivatives(p: ClopenSet) -> HomeoClass:
    """Classify by iterating cb_derivative until the next step is empty."""
    if not p:
        return EMPTY
    rank = 0
    current = p
    while True:
        following = cb_derivative(current)
        if not following:
            break
        current = following
        rank += 1
    points = order_type(current)
    if not points.is_finite:
        raise ClopenError(f"last non-empty derivative {current} is infinite")
    return HomeoClass(rank, points.finite_value())


def in_ideal(p: ClopenSet, beta: int) -> bool:
    """True iff the beta-fold derivative of p is empty, i.e. rank(p) < beta."""
    if beta < 0:
        raise ClopenError("beta is a natural number")
    current = p
    for _ in range(beta):
        if not current:
            return True
        current = cb_derivative(current)
    return not current


def _exponent_capacity(space: Space) -> int:
    return leading_term(space.delta)[0] if space.delta else 0


def quotient_project(p: ClopenSet, beta: int) -> ClopenSet:
    """Image of p in the clopen algebra of the beta-fold derived space."""
    if beta < 0 or beta > _exponent_capacity(p.space):
        raise ClopenError(f"beta = {beta} exceeds the exponent capacity of delta = {p.space.delta}")
    current = p
    for _ in range(beta):
        current = cb_derivative(current)
    return current


def algebra_rank_degree(space: Space) -> tuple[int, int]:
    """Return (alpha, a) for delta = w^alpha * a."""
    if len(space.delta.terms) != 1:
        raise ClopenError(f"delta = {space.delta} is not of the form w^alpha*a")
    return space.delta.terms[0]


def num_atoms(p: ClopenSet) -> int | float:
    """Number of isolated points of p; math.inf when there are infinitely many."""
    count = 0
    for lo, hi in p.intervals:
        length = left_sub(lo, hi)
        if not length.is_finite:
            return math.inf
        count += length.finite_value()
    return count


def realize(
    space: Space,
    target: HomeoClass,
    base: Ordinal,
    capacity: Ordinal | None = None,
) -> ClopenSet:
    """Canonical set (base, base + w^rank*degree] of the given class."""
    if target.is_empty:
        return space.empty()
    width = omega_pow(target.rank, target.degree)
    if capacity is not None and capacity < width:
        raise ClopenError(f"capacity {capacity} cannot hold class {target}")
    top = add(base, width)
    if top > space.delta:
        raise ClopenError(f"class {target} at base {base} leaves [1, {space.delta}]")
    return ClopenSet(space, ((base, top),))


def least_representative(target: HomeoClass) -> Ordinal:
    """The least ordinal whose interval [1, x] has the given class."""
    if target.is_empty:
        return ZERO
    if target.rank == 0:
        return Ordinal.from_int(target.degree)
    return add(omega_pow(target.rank, target.degree), ONE)


def cardinal_sequence(p: ClopenSet) -> tuple[int | float, ...]:
    """Number of points of each Cantor-Bendixson rank, up to the rank of p."""
    target = homeo_class(p)
    if target.is_empty:
        return ()
    return tuple(math.inf for _ in range(target.rank)) + (target.degree,)


def degree_blocks(space: Space) -> tuple[ClopenSet, ...]:
    """The a blocks (w^alpha*(i-1), w^alpha*i] of a space with delta = w^alpha*a."""
    alpha, degree = algebra_rank_degree(space)
    return tuple(
        ClopenSet(space, ((omega_pow(alpha, i - 1), omega_pow(alpha, i)),))
        for i in range(1, degree + 1)
    )


_INTERVAL = re.compile(r"\(([^,()\]]*),([^,()\]]*)\]")


def parse_clopen(text: str, space: Space) -> ClopenSet:
    """Parse '{(a,b], (c,d]}'; '{}' is the empty set."""
    stripped = text.strip()
    offset = len(text) - len(text.lstrip())
    if not stripped.startswith("{"):
        raise ClopenParseError("expected '{'", offset)
    if not stripped.endswith("}"):
        raise ClopenParseError("expected '}'", offset + len(stripped) - 1)
    body = stripped[1:-1]
    base = offset + 1
    raw: list[Interval] = []
    position = 0
    while body[position:].strip():
        while body[position].isspace():
            position += 1
        if raw:
            if body[position] != ",":
                raise ClopenParseError("expected ','", base + position)
            position += 1
            while position < len(body) and body[position].isspace():
                position += 1
        match = _INTERVAL.match(body, position)
        if match is None:
            raise ClopenParseError("expected an interval '(lo,hi]'", base + position)
        bounds = []
        for group in (1, 2):
            try:
                bounds.append(parse_ordinal(match.group(group)))
            except OrdinalParseError as exc:
                raise ClopenParseError(str(exc), base + match.start(group) + exc.position) from exc
        raw.append((bounds[0], bounds[1]))
        position = match.end()
    try:
        return make(space, raw)
    except (ClopenError, OrdinalError) as exc:
        raise ClopenParseError(str(exc), offset) from exc


def format_clopen(p: ClopenSet) -> str:
    inner = ", ".join(f"({format_ordinal(lo)},{format_ordinal(hi)}]" for lo, hi in p.intervals)
    return "{" + inner + "}"


def from_intervals(space: Space, raw: Sequence[tuple[Ordinal | int, Ordinal | int]]) -> ClopenSet:
    """make() that also accepts Python ints as finite endpoints."""

    def coerce(value: Ordinal | int) -> Ordinal:
        return value if isinstance(value, Ordinal) else Ordinal.from_int(value)

    return make(space, [(coerce(lo), coerce(hi)) for lo, hi in raw])
