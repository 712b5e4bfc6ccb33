"""Computable permutations of the block indices [1, w)."""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Mapping

DEFAULT_ORBIT_SEARCH = 10_000


class PermError(ValueError):
    """Raised for non-bijective tables or a missing single-cycle certificate."""


class Perm(ABC):
    """A bijection of the positive integers with a computable inverse."""

    single_cycle: bool = False

    @abstractmethod
    def apply(self, i: int) -> int:
        ...

    @abstractmethod
    def inverse_apply(self, i: int) -> int:
        ...

    def __call__(self, i: int) -> int:
        return self.apply(i)

    def position(self, i: int) -> int:
        """Orbit coordinate with position(apply(i)) == position(i) + 1."""
        return _search_orbit(self, i)

    def describe(self) -> str:
        return type(self).__name__


def _check_index(i: int) -> None:
    if i < 1:
        raise PermError(f"block indices start at 1, got {i}")


class TablePerm(Perm):
    """Finite-support permutation given by an explicit table; fixes everything else."""

    def __init__(self, table: Mapping[int, int]) -> None:
        cleaned = {int(k): int(v) for k, v in table.items() if k != v}
        for k, v in cleaned.items():
            _check_index(k)
            _check_index(v)
        if set(cleaned) != set(cleaned.values()):
            raise PermError(f"table {dict(table)} is not a permutation of its support")
        self._forward = cleaned
        self._backward = {v: k for k, v in cleaned.items()}

    @property
    def is_identity(self) -> bool:
        return not self._forward

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self._forward)

    def apply(self, i: int) -> int:
        _check_index(i)
        return self._forward.get(i, i)

    def inverse_apply(self, i: int) -> int:
        _check_index(i)
        return self._backward.get(i, i)

    def describe(self) -> str:
        pairs = " ".join(f"({k} {v})" for k, v in sorted(self._forward.items()))
        return f"(table {pairs})" if pairs else "(table)"


IDENTITY_PERM = TablePerm({})


def transposition(i: int, j: int) -> TablePerm:
    return TablePerm({i: j, j: i})


def cycle(*indices: int) -> TablePerm:
    """The finite cycle indices[0] -> indices[1] -> ... -> indices[0]."""
    return TablePerm({a: b for a, b in zip(indices, indices[1:] + indices[:1])})


class Zigzag(Perm):
    """Single infinite cycle ... 5 -> 3 -> 1 -> 2 -> 4 -> 6 ..."""

    single_cycle = True

    def apply(self, i: int) -> int:
        _check_index(i)
        if i == 1:
            return 2
        return i + 2 if i % 2 == 0 else i - 2

    def inverse_apply(self, i: int) -> int:
        _check_index(i)
        if i == 2:
            return 1
        if i == 1:
            return 3
        return i - 2 if i % 2 == 0 else i + 2

    def position(self, i: int) -> int:
        _check_index(i)
        return i // 2 if i % 2 == 0 else -(i // 2)

    def describe(self) -> str:
        return "(zigzag)"


class ComposedPerm(Perm):
    """outer after inner."""

    def __init__(self, outer: Perm, inner: Perm) -> None:
        self.outer = outer
        self.inner = inner

    def apply(self, i: int) -> int:
        return self.outer.apply(self.inner.apply(i))

    def inverse_apply(self, i: int) -> int:
        return self.inner.inverse_apply(self.outer.inverse_apply(i))

    def describe(self) -> str:
        return f"(perm-compose {self.outer.describe()} {self.inner.describe()})"


class InversePerm(Perm):
    def __init__(self, base: Perm) -> None:
        self.base = base
        self.single_cycle = base.single_cycle

    def apply(self, i: int) -> int:
        return self.base.inverse_apply(i)

    def inverse_apply(self, i: int) -> int:
        return self.base.apply(i)

    def position(self, i: int) -> int:
        if self.single_cycle:
            return -self.base.position(i)
        return super().position(i)

    def describe(self) -> str:
        return f"(perm-inverse {self.base.describe()})"


class ConjugatePerm(Perm):
    """conjugator * base * conjugator^-1; keeps the cycle type of base."""

    def __init__(self, conjugator: Perm, base: Perm) -> None:
        self.conjugator = conjugator
        self.base = base
        self.single_cycle = base.single_cycle

    def apply(self, i: int) -> int:
        return self.conjugator.apply(self.base.apply(self.conjugator.inverse_apply(i)))

    def inverse_apply(self, i: int) -> int:
        return self.conjugator.apply(self.base.inverse_apply(self.conjugator.inverse_apply(i)))

    def position(self, i: int) -> int:
        if self.single_cycle:
            return self.base.position(self.conjugator.inverse_apply(i))
        return super().position(i)

    def describe(self) -> str:
        return f"(perm-conjugate {self.conjugator.describe()} {self.base.describe()})"


def inverse(p: Perm) -> Perm:
    if isinstance(p, InversePerm):
        return p.base
    if isinstance(p, TablePerm):
        return TablePerm(p._backward)
    return InversePerm(p)


def compose(outer: Perm, inner: Perm) -> Perm:
    if isinstance(outer, TablePerm) and outer.is_identity:
        return inner
    if isinstance(inner, TablePerm) and inner.is_identity:
        return outer
    return ComposedPerm(outer, inner)


def is_identity(p: Perm) -> bool:
    """Syntactic identity check; only tables can be recognised."""
    return isinstance(p, TablePerm) and p.is_identity


def support_bound(p: Perm) -> int | None:
    """Largest index p moves (0 if none), or None when p is not known to have finite support."""
    if isinstance(p, TablePerm):
        return max(p.support, default=0)
    if isinstance(p, InversePerm):
        return support_bound(p.base)
    if isinstance(p, ComposedPerm):
        outer, inner = support_bound(p.outer), support_bound(p.inner)
        return None if outer is None or inner is None else max(outer, inner)
    return None


def require_single_cycle(p: Perm) -> None:
    if not p.single_cycle:
        raise PermError(f"{p.describe()} carries no single-infinite-cycle certificate")


def _search_orbit(p: Perm, i: int, limit: int = DEFAULT_ORBIT_SEARCH) -> int:
    """The j with p^j(1) = i, searching forward and backward alternately."""
    require_single_cycle(p)
    _check_index(i)
    forward = backward = 1
    if i == 1:
        return 0
    for step in range(1, limit + 1):
        forward = p.apply(forward)
        if forward == i:
            return step
        backward = p.inverse_apply(backward)
        if backward == i:
            return -step
    raise PermError(f"{i} not reached within {limit} steps of the orbit of 1")


def orbit_index(p: Perm, i: int) -> int:
    """The j with p^j(1) = i for a certified single cycle."""
    require_single_cycle(p)
    return p.position(i) - p.position(1)


def orbit_walk(p: Perm, start: int, steps: int) -> list[int]:
    """[start, p(start), ...] for steps >= 0, or backwards for steps < 0."""
    points = [start]
    for _ in range(abs(steps)):
        points.append(p.apply(points[-1]) if steps >= 0 else p.inverse_apply(points[-1]))
    return points
