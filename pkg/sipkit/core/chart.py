"""Finite piecewise order isomorphisms between interval unions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from sipkit.core.clopen import ClopenSet, Space, format_clopen, make
from sipkit.core.ordinal import Ordinal, add, left_sub


class ChartError(ValueError):
    """Raised when pieces overlap or connect intervals of different order type."""


@dataclass(frozen=True)
class Piece:
    """The order isomorphism (src_lo, src_hi] -> (dst_lo, dst_hi]."""

    src_lo: Ordinal
    src_hi: Ordinal
    dst_lo: Ordinal
    dst_hi: Ordinal

    def __post_init__(self) -> None:
        if not (self.src_lo < self.src_hi and self.dst_lo < self.dst_hi):
            raise ChartError(f"empty interval in piece {self}")
        # Equal lengths is equivalent to equal order types of the two intervals.
        if left_sub(self.src_lo, self.src_hi) != left_sub(self.dst_lo, self.dst_hi):
            raise ChartError(f"piece {self} joins intervals of different order type")

    def __str__(self) -> str:
        return f"({self.src_lo},{self.src_hi}] -> ({self.dst_lo},{self.dst_hi}]"

    @property
    def is_identity(self) -> bool:
        return self.src_lo == self.dst_lo

    def covers(self, x: Ordinal) -> bool:
        return self.src_lo < x <= self.src_hi

    def covers_target(self, y: Ordinal) -> bool:
        return self.dst_lo < y <= self.dst_hi

    def apply(self, x: Ordinal) -> Ordinal:
        return add(self.dst_lo, left_sub(self.src_lo, x))

    def apply_inverse(self, y: Ordinal) -> Ordinal:
        return add(self.src_lo, left_sub(self.dst_lo, y))

    def inverse(self) -> "Piece":
        return Piece(self.dst_lo, self.dst_hi, self.src_lo, self.src_hi)

    def restrict(self, lo: Ordinal, hi: Ordinal) -> "Piece":
        """The piece restricted to the source subinterval (lo, hi]."""
        if not (self.src_lo <= lo < hi <= self.src_hi):
            raise ChartError(f"({lo},{hi}] is not inside the source of {self}")
        image_lo = self.dst_lo if lo == self.src_lo else self.apply(lo)
        return Piece(lo, hi, image_lo, self.apply(hi))

    def restrict_target(self, lo: Ordinal, hi: Ordinal) -> "Piece":
        return self.inverse().restrict(lo, hi).inverse()

    def clip(self, lo: Ordinal, hi: Ordinal) -> "Piece | None":
        """Restriction to (lo, hi] intersected with the source, or None."""
        new_lo = max(lo, self.src_lo)
        new_hi = min(hi, self.src_hi)
        return self.restrict(new_lo, new_hi) if new_lo < new_hi else None

    def clip_target(self, lo: Ordinal, hi: Ordinal) -> "Piece | None":
        new_lo = max(lo, self.dst_lo)
        new_hi = min(hi, self.dst_hi)
        return self.restrict_target(new_lo, new_hi) if new_lo < new_hi else None


def _check_disjoint(intervals: list[tuple[Ordinal, Ordinal]], side: str) -> None:
    ordered = sorted(intervals)
    for (_, hi), (lo, _) in zip(ordered, ordered[1:]):
        if lo < hi:
            raise ChartError(f"{side} intervals overlap near {lo}")


class Chart:
    """A finite sequence of pieces with disjoint sources and disjoint targets."""

    __slots__ = ("pieces",)

    def __init__(self, pieces: Iterable[Piece] = ()) -> None:
        ordered = tuple(sorted(pieces, key=lambda piece: piece.src_lo))
        _check_disjoint([(p.src_lo, p.src_hi) for p in ordered], "source")
        _check_disjoint([(p.dst_lo, p.dst_hi) for p in ordered], "target")
        self.pieces = ordered

    def __iter__(self) -> Iterator[Piece]:
        return iter(self.pieces)

    def __len__(self) -> int:
        return len(self.pieces)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Chart) and self.pieces == other.pieces

    def __hash__(self) -> int:
        return hash(self.pieces)

    def __repr__(self) -> str:
        return "Chart(" + "; ".join(str(piece) for piece in self.pieces) + ")"

    @property
    def is_identity(self) -> bool:
        return all(piece.is_identity for piece in self.pieces)

    def find(self, x: Ordinal) -> Piece | None:
        for piece in self.pieces:
            if piece.covers(x):
                return piece
        return None

    def find_target(self, y: Ordinal) -> Piece | None:
        for piece in self.pieces:
            if piece.covers_target(y):
                return piece
        return None

    def apply(self, x: Ordinal) -> Ordinal:
        piece = self.find(x)
        if piece is None:
            raise ChartError(f"{x} is outside the chart's sources")
        return piece.apply(x)

    def apply_inverse(self, y: Ordinal) -> Ordinal:
        piece = self.find_target(y)
        if piece is None:
            raise ChartError(f"{y} is outside the chart's targets")
        return piece.apply_inverse(y)

    def inverse(self) -> "Chart":
        return Chart(piece.inverse() for piece in self.pieces)

    def sources(self, space: Space) -> ClopenSet:
        return make(space, [(p.src_lo, p.src_hi) for p in self.pieces])

    def targets(self, space: Space) -> ClopenSet:
        return make(space, [(p.dst_lo, p.dst_hi) for p in self.pieces])

    def clip(self, lo: Ordinal, hi: Ordinal) -> "Chart":
        """Pieces restricted to sources inside (lo, hi]."""
        return Chart(piece for piece in (p.clip(lo, hi) for p in self.pieces) if piece is not None)

    def clip_to(self, region: ClopenSet) -> "Chart":
        clipped: list[Piece] = []
        for lo, hi in region.intervals:
            clipped.extend(piece for piece in (p.clip(lo, hi) for p in self.pieces) if piece is not None)
        return Chart(clipped)

    def normalized(self) -> "Chart":
        """Merge pieces that continue each other on both sides."""
        merged: list[Piece] = []
        for piece in self.pieces:
            if merged:
                last = merged[-1]
                if last.src_hi == piece.src_lo and last.dst_hi == piece.dst_lo:
                    merged[-1] = Piece(last.src_lo, piece.src_hi, last.dst_lo, piece.dst_hi)
                    continue
            merged.append(piece)
        return Chart(merged)

    def describe(self) -> str:
        body = " ".join(
            f"(piece {{({p.src_lo},{p.src_hi}]}} {{({p.dst_lo},{p.dst_hi}]}})" for p in self.pieces
        )
        return f"(chart {body})" if body else "(chart)"


def compose_charts(outer: Chart, inner: Chart) -> Chart:
    """outer after inner; every target of inner must be covered by sources of outer."""
    pieces: list[Piece] = []
    for first in inner:
        for second in outer:
            overlap_lo = max(first.dst_lo, second.src_lo)
            overlap_hi = min(first.dst_hi, second.src_hi)
            if overlap_lo >= overlap_hi:
                continue
            before = first.restrict_target(overlap_lo, overlap_hi)
            after = second.restrict(overlap_lo, overlap_hi)
            pieces.append(Piece(before.src_lo, before.src_hi, after.dst_lo, after.dst_hi))
    result = Chart(pieces)
    if _merged(p for p in result) != _merged(p for p in inner):
        raise ChartError("outer chart does not cover the targets of the inner chart")
    return result.normalized()


def _merged(pieces: Iterable[Piece]) -> list[tuple[Ordinal, Ordinal]]:
    spans: list[tuple[Ordinal, Ordinal]] = []
    for lo, hi in sorted((p.src_lo, p.src_hi) for p in pieces):
        if spans and spans[-1][1] == lo:
            spans[-1] = (spans[-1][0], hi)
        else:
            spans.append((lo, hi))
    return spans


def identity_chart(lo: Ordinal, hi: Ordinal) -> Chart:
    return Chart([Piece(lo, hi, lo, hi)])


def translation_chart(src_lo: Ordinal, dst_lo: Ordinal, length: Ordinal) -> Chart:
    return Chart([Piece(src_lo, add(src_lo, length), dst_lo, add(dst_lo, length))])


def format_chart(chart: Chart, space: Space) -> str:
    return f"{format_clopen(chart.sources(space))} -> {format_clopen(chart.targets(space))}"
