"""Exact arithmetic for ordinals below omega^omega in Cantor normal form."""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from functools import total_ordering

Term = tuple[int, int]


class OrdinalError(ArithmeticError):
    """Raised when an ordinal operation is applied outside its domain."""


class OrdinalParseError(ValueError):
    """Raised when ordinal text does not match the canonical grammar."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at position {position})")
        self.position = position


class Kind(Enum):
    """Zero / successor / limit classification."""

    ZERO = "zero"
    SUCCESSOR = "successor"
    LIMIT = "limit"


class Comparison(Enum):
    """Result of comparing two ordinals."""

    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"


@total_ordering
@dataclass(frozen=True)
class Ordinal:
    """An ordinal w^e1*c1 + ... + w^ek*ck with e1 > ... > ek >= 0 and ci >= 1."""

    terms: tuple[Term, ...] = ()

    def __post_init__(self) -> None:
        previous: int | None = None
        for exponent, coefficient in self.terms:
            if exponent < 0 or coefficient < 1:
                raise OrdinalError(f"invalid term w^{exponent}*{coefficient}")
            if previous is not None and exponent >= previous:
                raise OrdinalError("exponents must be strictly decreasing")
            previous = exponent

    @classmethod
    def from_int(cls, n: int) -> "Ordinal":
        """Return the finite ordinal n."""
        if n < 0:
            raise OrdinalError("ordinals are non-negative")
        return cls(((0, n),)) if n else cls()

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, Ordinal):
            return NotImplemented
        # Lexicographic order on CNF terms is the ordinal order.
        return self.terms < other.terms

    def __add__(self, other: "Ordinal") -> "Ordinal":
        return add(self, other)

    def __mul__(self, other: "Ordinal") -> "Ordinal":
        return mul(self, other)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __str__(self) -> str:
        return format_ordinal(self)

    def __repr__(self) -> str:
        return f"Ordinal({format_ordinal(self)!r})"

    @property
    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0] == 0)

    def finite_value(self) -> int:
        """Return the value of a finite ordinal as an int."""
        if not self.is_finite:
            raise OrdinalError(f"{self} is infinite")
        return self.terms[0][1] if self.terms else 0

    def succ(self) -> "Ordinal":
        return add(self, ONE)

    @property
    def is_limit(self) -> bool:
        return classify(self) is Kind.LIMIT

    def divisible_by_omega_pow(self, k: int) -> bool:
        """True iff self = w^k * t for some ordinal t."""
        return all(exponent >= k for exponent, _ in self.terms)


ZERO = Ordinal()
ONE = Ordinal(((0, 1),))
OMEGA = Ordinal(((1, 1),))


def omega_pow(k: int, coefficient: int = 1) -> Ordinal:
    """Return w^k * coefficient."""
    if k < 0:
        raise OrdinalError("exponent must be a natural number")
    if coefficient == 0:
        return ZERO
    return Ordinal(((k, coefficient),))


def cmp(a: Ordinal, b: Ordinal) -> Comparison:
    if a.terms == b.terms:
        return Comparison.EQUAL
    return Comparison.LESS if a.terms < b.terms else Comparison.GREATER


def add(a: Ordinal, b: Ordinal) -> Ordinal:
    """Ordinal sum a + b."""
    if not b.terms:
        return a
    lead_exponent, lead_coefficient = b.terms[0]
    kept = [term for term in a.terms if term[0] > lead_exponent]
    merged = lead_coefficient
    for exponent, coefficient in a.terms:
        if exponent == lead_exponent:
            merged += coefficient
    return Ordinal(tuple(kept) + ((lead_exponent, merged),) + b.terms[1:])


def left_sub(a: Ordinal, b: Ordinal) -> Ordinal:
    """Return the unique t with a + t = b."""
    for index, term in enumerate(a.terms):
        if index >= len(b.terms):
            raise OrdinalError(f"left_sub requires {a} <= {b}")
        other = b.terms[index]
        if term == other:
            continue
        exponent, coefficient = term
        other_exponent, other_coefficient = other
        if other_exponent > exponent:
            return Ordinal(b.terms[index:])
        if other_exponent == exponent and other_coefficient > coefficient:
            return Ordinal(((exponent, other_coefficient - coefficient),) + b.terms[index + 1 :])
        raise OrdinalError(f"left_sub requires {a} <= {b}")
    return Ordinal(b.terms[len(a.terms) :])


def mul(a: Ordinal, b: Ordinal) -> Ordinal:
    """Ordinal product a * b by left distribution over the terms of b."""
    if not a.terms or not b.terms:
        return ZERO
    lead_exponent, lead_coefficient = a.terms[0]
    result = ZERO
    for exponent, coefficient in b.terms:
        if exponent >= 1:
            part = Ordinal(((lead_exponent + exponent, coefficient),))
        else:
            part = Ordinal(((lead_exponent, lead_coefficient * coefficient),) + a.terms[1:])
        result = add(result, part)
    return result


def divmod_omega(a: Ordinal) -> tuple[Ordinal, int]:
    """Return (q, r) with a = w*q + r and r finite."""
    quotient = tuple((exponent - 1, coefficient) for exponent, coefficient in a.terms if exponent >= 1)
    remainder = a.terms[-1][1] if a.terms and a.terms[-1][0] == 0 else 0
    return Ordinal(quotient), remainder


def classify(a: Ordinal) -> Kind:
    if not a.terms:
        return Kind.ZERO
    return Kind.SUCCESSOR if a.terms[-1][0] == 0 else Kind.LIMIT


def leading_term(a: Ordinal) -> Term:
    if not a.terms:
        raise OrdinalError("leading_term of 0 is undefined")
    return a.terms[0]


_TOKEN = re.compile(r"\s*(?:(?P<nat>[0-9]+)|(?P<sym>[w^*+]))")


def parse_ordinal(text: str) -> Ordinal:
    """Parse canonical ordinal text such as 'w^2*3 + w + 4'."""
    tokens: list[tuple[str, str, int]] = []
    position = 0
    while position < len(text):
        if text[position:].strip() == "":
            break
        match = _TOKEN.match(text, position)
        if match is None:
            while text[position].isspace():
                position += 1
            raise OrdinalParseError(f"unexpected character {text[position]!r}", position)
        start = match.start("nat") if match.group("nat") is not None else match.start("sym")
        if match.group("nat") is not None:
            tokens.append(("nat", match.group("nat"), start))
        else:
            tokens.append((match.group("sym"), match.group("sym"), start))
        position = match.end()
    if not tokens:
        raise OrdinalParseError("empty expression", 0)
    if len(tokens) == 1 and tokens[0][:2] == ("nat", "0"):
        return ZERO

    cursor = 0

    def expect_nat() -> int:
        nonlocal cursor
        if cursor >= len(tokens) or tokens[cursor][0] != "nat":
            where = tokens[cursor][2] if cursor < len(tokens) else len(text)
            raise OrdinalParseError("expected a natural number", where)
        kind, value, where = tokens[cursor]
        if value.startswith("0"):
            raise OrdinalParseError("zero or zero-padded number inside an expression", where)
        cursor += 1
        return int(value)

    terms: list[Term] = []
    while True:
        if cursor >= len(tokens):
            raise OrdinalParseError("expected a term", len(text))
        kind, _, where = tokens[cursor]
        if kind == "w":
            cursor += 1
            exponent = 1
            coefficient = 1
            if cursor < len(tokens) and tokens[cursor][0] == "^":
                cursor += 1
                exponent = expect_nat()
            if cursor < len(tokens) and tokens[cursor][0] == "*":
                cursor += 1
                coefficient = expect_nat()
        elif kind == "nat":
            exponent = 0
            coefficient = expect_nat()
        else:
            raise OrdinalParseError(f"unexpected {tokens[cursor][1]!r}", where)
        if terms and exponent >= terms[-1][0]:
            raise OrdinalParseError("terms must have strictly decreasing exponents", where)
        terms.append((exponent, coefficient))
        if cursor == len(tokens):
            break
        if tokens[cursor][0] != "+":
            raise OrdinalParseError(f"expected '+', found {tokens[cursor][1]!r}", tokens[cursor][2])
        cursor += 1
    return Ordinal(tuple(terms))


def _format_term(exponent: int, coefficient: int) -> str:
    if exponent == 0:
        return str(coefficient)
    head = "w" if exponent == 1 else f"w^{exponent}"
    return head if coefficient == 1 else f"{head}*{coefficient}"


def format_ordinal(a: Ordinal) -> str:
    if not a.terms:
        return "0"
    return " + ".join(_format_term(exponent, coefficient) for exponent, coefficient in a.terms)
