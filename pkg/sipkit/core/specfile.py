"""S-expression text form for homeomorphisms and block permutations."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

from sipkit.core.chart import Chart, ChartError, Piece
from sipkit.core.clopen import ClopenError, ClopenParseError, Interval, parse_clopen
from sipkit.core.homeo import BlockMap, BlockSystem, ChartMap, Homeo, HomeoError, Identity, compose, inverse, lift
from sipkit.core.perm import Perm, PermError, TablePerm, Zigzag, cycle
from sipkit.core.perm import compose as perm_compose
from sipkit.core.perm import inverse as perm_inverse


class SpecParseError(ValueError):
    """Raised for malformed homeomorphism text; position is a character offset."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class Atom:
    text: str
    position: int


@dataclass
class Form:
    position: int
    items: list["Node"] = field(default_factory=list)

    @property
    def head(self) -> str:
        if not self.items or not isinstance(self.items[0], Atom):
            raise SpecParseError("form has no head symbol", self.position)
        return self.items[0].text

    @property
    def args(self) -> list["Node"]:
        return self.items[1:]


Node = Union[Atom, Form]

_TOKEN = re.compile(r"\s*(?:(?P<open>\()|(?P<close>\))|(?P<set>\{[^}]*\})|(?P<atom>[^\s(){}]+))")


def tokenize(text: str) -> list[Atom]:
    """Parentheses, brace-delimited clopen literals and bare atoms."""
    tokens: list[Atom] = []
    position = 0
    while position < len(text):
        if text[position:].strip() == "":
            break
        match = _TOKEN.match(text, position)
        if match is None:
            start = len(text) - len(text[position:].lstrip())
            raise SpecParseError(f"unexpected character {text[start]!r}", start)
        kind = match.lastgroup
        tokens.append(Atom(match.group(kind), match.start(kind)))
        position = match.end()
    return tokens


def read(text: str) -> Form:
    """Read exactly one top-level form."""
    tokens = tokenize(text)
    if not tokens:
        raise SpecParseError("empty input", 0)
    node, index = _read(tokens, 0)
    if index != len(tokens):
        raise SpecParseError("trailing input after the first form", tokens[index].position)
    if not isinstance(node, Form):
        raise SpecParseError("expected a parenthesised form", node.position)
    return node


def _read(tokens: list[Atom], index: int) -> tuple[Node, int]:
    token = tokens[index]
    if token.text == ")":
        raise SpecParseError("unbalanced ')'", token.position)
    if token.text != "(":
        return token, index + 1
    form = Form(token.position)
    index += 1
    while index < len(tokens) and tokens[index].text != ")":
        node, index = _read(tokens, index)
        form.items.append(node)
    if index == len(tokens):
        raise SpecParseError("unclosed '('", token.position)
    return form, index + 1


def _form(node: Node, what: str) -> Form:
    if not isinstance(node, Form):
        raise SpecParseError(f"expected a {what} form, got {node.text!r}", node.position)
    return node


def _integer(node: Node) -> int:
    if not isinstance(node, Atom) or not (node.text.isascii() and node.text.isdigit()) or int(node.text) < 1:
        raise SpecParseError("expected a positive block index", node.position)
    return int(node.text)


def _arity(form: Form, count: int) -> None:
    if len(form.args) != count:
        raise SpecParseError(f"'{form.head}' takes {count} argument(s), got {len(form.args)}", form.position)


def build_perm(node: Node) -> Perm:
    form = _form(node, "permutation")
    head = form.head
    try:
        if head == "table":
            table: dict[int, int] = {}
            for entry in form.args:
                pair = _form(entry, "(i j)")
                if len(pair.items) != 2:
                    raise SpecParseError("table entries are (i j)", pair.position)
                table[_integer(pair.items[0])] = _integer(pair.items[1])
            return TablePerm(table)
        if head == "zigzag":
            _arity(form, 0)
            return Zigzag()
        if head == "cycle":
            return cycle(*(_integer(arg) for arg in form.args))
        if head == "perm-compose":
            _arity(form, 2)
            return perm_compose(build_perm(form.args[0]), build_perm(form.args[1]))
        if head == "perm-inverse":
            _arity(form, 1)
            return perm_inverse(build_perm(form.args[0]))
    except PermError as exc:
        raise SpecParseError(str(exc), form.position) from exc
    raise SpecParseError(f"unknown permutation form '{head}'", form.position)


def _interval(node: Node, blocks: BlockSystem) -> Interval:
    if not isinstance(node, Atom) or not node.text.startswith("{"):
        raise SpecParseError("expected a {(lo,hi]} interval literal", node.position)
    try:
        parsed = parse_clopen(node.text, blocks.space)
    except ClopenParseError as exc:
        raise SpecParseError(str(exc), node.position + exc.position) from exc
    except ClopenError as exc:
        raise SpecParseError(str(exc), node.position) from exc
    if len(parsed.intervals) != 1:
        raise SpecParseError("a piece joins exactly one interval on each side", node.position)
    return parsed.intervals[0]


def build_chart(node: Node, blocks: BlockSystem) -> Chart:
    form = _form(node, "chart")
    if form.head != "chart":
        raise SpecParseError(f"expected 'chart', got '{form.head}'", form.position)
    pieces = []
    for entry in form.args:
        piece = _form(entry, "piece")
        if piece.head != "piece" or len(piece.args) != 2:
            raise SpecParseError("chart entries are (piece {src} {dst})", piece.position)
        (src_lo, src_hi), (dst_lo, dst_hi) = (_interval(arg, blocks) for arg in piece.args)
        try:
            pieces.append(Piece(src_lo, src_hi, dst_lo, dst_hi))
        except ChartError as exc:
            raise SpecParseError(str(exc), piece.position) from exc
    try:
        return Chart(pieces)
    except ChartError as exc:
        raise SpecParseError(str(exc), form.position) from exc


def build_homeo(node: Node, blocks: BlockSystem) -> Homeo:
    form = _form(node, "homeomorphism")
    head = form.head
    try:
        if head == "identity":
            _arity(form, 0)
            return Identity(blocks)
        if head == "chart":
            return ChartMap(blocks, build_chart(form, blocks))
        if head == "lift":
            _arity(form, 1)
            return lift(blocks, build_perm(form.args[0]))
        if head == "blockmap":
            if not form.args:
                raise SpecParseError("'blockmap' needs a permutation", form.position)
            overrides: dict[int, Chart] = {}
            for entry in form.args[1:]:
                override = _form(entry, "override")
                if override.head != "override" or len(override.args) != 2:
                    raise SpecParseError("expected (override i (chart ...))", override.position)
                overrides[_integer(override.args[0])] = build_chart(override.args[1], blocks)
            return BlockMap(blocks, build_perm(form.args[0]), overrides)
        if head == "compose":
            if len(form.args) < 2:
                raise SpecParseError("'compose' takes at least two maps", form.position)
            return compose(*(build_homeo(arg, blocks) for arg in form.args))
        if head == "inverse":
            _arity(form, 1)
            return inverse(build_homeo(form.args[0], blocks))
    except (HomeoError, PermError) as exc:
        raise SpecParseError(str(exc), form.position) from exc
    raise SpecParseError(f"unknown homeomorphism form '{head}'", form.position)


def parse_homeo(text: str, blocks: BlockSystem) -> Homeo:
    return build_homeo(read(text), blocks)


def parse_perm(text: str) -> Perm:
    return build_perm(read(text))


def format_homeo(g: Homeo) -> str:
    return g.describe()
