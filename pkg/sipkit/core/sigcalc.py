"""Pairs of homeomorphism classes with disjoint-union sums and the exchange relation."""

from __future__ import annotations

import re
from dataclasses import dataclass

from sipkit.core.clopen import EMPTY, HomeoClass


class ClassParseError(ValueError):
    """Raised when class, pair or signed text is malformed."""


def combine(c1: HomeoClass, c2: HomeoClass) -> HomeoClass:
    """Class of a disjoint union of sets with classes c1 and c2."""
    if c1.is_empty:
        return c2
    if c2.is_empty:
        return c1
    if c1.rank != c2.rank:
        return c1 if c1.rank > c2.rank else c2
    return HomeoClass(c1.rank, c1.degree + c2.degree)


@dataclass(frozen=True)
class ClassPair:
    """An ordered pair (P, Q) of classes."""

    p: HomeoClass = EMPTY
    q: HomeoClass = EMPTY

    def __add__(self, other: "ClassPair") -> "ClassPair":
        return pair_add(self, other)

    def __neg__(self) -> "ClassPair":
        return pair_neg(self)

    def __str__(self) -> str:
        return f"({self.p},{self.q})"


ZERO_PAIR = ClassPair()


def pair_add(x: ClassPair, y: ClassPair) -> ClassPair:
    return ClassPair(combine(x.p, y.p), combine(x.q, y.q))


def pair_neg(x: ClassPair) -> ClassPair:
    return ClassPair(x.q, x.p)


def diagonal(c: HomeoClass) -> ClassPair:
    return ClassPair(c, c)


def sim(x: ClassPair, y: ClassPair) -> bool:
    """x ~ y iff x.p + y.q and y.p + x.q have the same class. Not transitive."""
    return combine(x.p, y.q) == combine(y.p, x.q)


@dataclass(frozen=True)
class SignedClass:
    """Canonical reduction of a pair: sign 0 (Zero), +1 or -1 with a class."""

    sign: int = 0
    rank: int = 0
    degree: int = 0

    @property
    def is_zero(self) -> bool:
        return self.sign == 0

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        return f"{'+' if self.sign > 0 else '-'}({self.rank},{self.degree})"


SIGNED_ZERO = SignedClass()


def signed(x: ClassPair) -> SignedClass:
    # Empty is encoded as rank 0 degree 0, which orders correctly below every class.
    p, q = x.p, x.q
    if p == q:
        return SIGNED_ZERO
    if p.rank != q.rank:
        return SignedClass(1, p.rank, p.degree) if p.rank > q.rank else SignedClass(-1, q.rank, q.degree)
    if p.degree > q.degree:
        return SignedClass(1, p.rank, p.degree - q.degree)
    return SignedClass(-1, q.rank, q.degree - p.degree)


def to_pair(s: SignedClass) -> ClassPair:
    """The simplest pair with the given signed form."""
    if s.is_zero:
        return ZERO_PAIR
    c = HomeoClass(s.rank, s.degree)
    return ClassPair(c, EMPTY) if s.sign > 0 else ClassPair(EMPTY, c)


def finite_difference(x: ClassPair) -> int:
    """|P| - |Q| for pairs of finite classes."""
    if x.p.rank or x.q.rank:
        raise ValueError(f"pair {x} has an infinite component")
    return x.p.degree - x.q.degree


_CLASS = r"(?:E|\(\s*[0-9]+\s*,\s*[0-9]+\s*\))"
_CLASS_RE = re.compile(r"\s*(?:(E)|\(\s*([0-9]+)\s*,\s*([0-9]+)\s*\))\s*")
_PAIR_RE = re.compile(rf"\s*\(\s*({_CLASS})\s*,\s*({_CLASS})\s*\)\s*")
_SIGNED_RE = re.compile(r"\s*(?:(0)|([+-])\s*\(\s*([0-9]+)\s*,\s*([0-9]+)\s*\))\s*")


def parse_class(text: str) -> HomeoClass:
    match = _CLASS_RE.fullmatch(text)
    if match is None:
        raise ClassParseError(f"not a class: {text!r} (expected 'E' or '(r,d)')")
    if match.group(1):
        return EMPTY
    rank, degree = int(match.group(2)), int(match.group(3))
    if degree == 0:
        raise ClassParseError(f"degree must be positive in {text!r}")
    return HomeoClass(rank, degree)


def parse_pair(text: str) -> ClassPair:
    match = _PAIR_RE.fullmatch(text)
    if match is None:
        raise ClassParseError(f"not a class pair: {text!r} (expected '(c,c)')")
    return ClassPair(parse_class(match.group(1)), parse_class(match.group(2)))


def parse_signed(text: str) -> SignedClass:
    match = _SIGNED_RE.fullmatch(text)
    if match is None:
        raise ClassParseError(f"not a signed class: {text!r}")
    if match.group(1):
        return SIGNED_ZERO
    degree = int(match.group(4))
    if degree == 0:
        raise ClassParseError(f"degree must be positive in {text!r}")
    return SignedClass(1 if match.group(2) == "+" else -1, int(match.group(3)), degree)
