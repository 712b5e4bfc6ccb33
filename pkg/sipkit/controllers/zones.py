"""Zone partitions of the block indices, zone copies of a blockwise map and their conjugacy."""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from typing import Callable, Collection, Iterable

from sipkit.controllers.errors import PreconditionError
from sipkit.core.chart import Chart, Piece, identity_chart
from sipkit.core.homeo import (
    BlockSystem,
    Homeo,
    LazyBlockMap,
    blockwise_chart,
    compose,
    first_disagreement,
    inverse,
    lift,
    restrict_to_blocks,
)
from sipkit.core.ordinal import Ordinal, add, left_sub
from sipkit.core.perm import Perm
from sipkit.core.report import CheckResult

logger = logging.getLogger(__name__)


class ZoneError(ValueError):
    """Raised for zone indices a zone rule does not have."""


class ZoneSystem(ABC):
    """A partition of [1, w) into infinite zones Z_n with enumerations theta_n."""

    @abstractmethod
    def zone(self, i: int) -> int:
        ...

    @abstractmethod
    def theta(self, n: int, k: int) -> int:
        """The k-th element of Z_n, k >= 1."""

    @abstractmethod
    def theta_inverse(self, n: int, i: int) -> int:
        ...

    def members(self, n: int, count: int) -> list[int]:
        return [self.theta(n, k) for k in range(1, count + 1)]

    def check_zone_perm(self, psi: Perm) -> None:
        """Raise PreconditionError unless psi permutes the zone indices."""

    def _check(self, i: int) -> None:
        if i < 1:
            raise ZoneError(f"block indices start at 1, got {i}")


class ResidueZones(ZoneSystem):
    """Z_n = {i : i = n mod m} for n in [1, m]."""

    def __init__(self, modulus: int) -> None:
        if modulus < 1:
            raise ZoneError(f"modulus must be positive, got {modulus}")
        self.modulus = modulus

    def zone(self, i: int) -> int:
        self._check(i)
        return (i - 1) % self.modulus + 1

    def theta(self, n: int, k: int) -> int:
        if not 1 <= n <= self.modulus:
            raise ZoneError(f"residue zones mod {self.modulus} have no zone {n}")
        self._check(k)
        return (k - 1) * self.modulus + n

    def theta_inverse(self, n: int, i: int) -> int:
        if self.zone(i) != n:
            raise ZoneError(f"{i} is not in zone {n}")
        return (i - n) // self.modulus + 1

    def __repr__(self) -> str:
        return f"ResidueZones({self.modulus})"

    def check_zone_perm(self, psi: Perm) -> None:
        zones = set(range(1, self.modulus + 1))
        if {psi(n) for n in zones} != zones:
            raise PreconditionError(f"psi does not permute the zones 1..{self.modulus}")


class DyadicZones(ZoneSystem):
    """Z_n = {i : the 2-adic valuation of i is n - 1}; infinitely many zones."""

    def zone(self, i: int) -> int:
        self._check(i)
        return (i & -i).bit_length()

    def theta(self, n: int, k: int) -> int:
        self._check(n)
        self._check(k)
        return (2 * k - 1) << (n - 1)

    def theta_inverse(self, n: int, i: int) -> int:
        if self.zone(i) != n:
            raise ZoneError(f"{i} is not in zone {n}")
        return ((i >> (n - 1)) + 1) // 2

    def __repr__(self) -> str:
        return "DyadicZones()"


class ZonePerm(Perm):
    """Sends the k-th block of zone m to the k-th block of zone psi(m)."""

    def __init__(self, zones: ZoneSystem, psi: Perm) -> None:
        self.zones = zones
        self.psi = psi

    def apply(self, i: int) -> int:
        m = self.zones.zone(i)
        return self.zones.theta(self.psi(m), self.zones.theta_inverse(m, i))

    def inverse_apply(self, j: int) -> int:
        n = self.zones.zone(j)
        m = self.psi.inverse_apply(n)
        return self.zones.theta(m, self.zones.theta_inverse(n, j))

    def describe(self) -> str:
        return f"(zones {self.zones!r} {self.psi.describe()})"


def _transported(blocks: BlockSystem, chart: Chart, source: int, target: int) -> Chart:
    """phi_(source,target) o chart o phi_(target,source) for a chart of A_source onto itself."""
    src_base, dst_base = blocks.base(source), blocks.base(target)

    def move(x: Ordinal) -> Ordinal:
        return add(dst_base, left_sub(src_base, x))

    return Chart(Piece(move(p.src_lo), move(p.src_hi), move(p.dst_lo), move(p.dst_hi)) for p in chart)


def zone_union(h: Homeo, zones: ZoneSystem, selected: Collection[int] | Callable[[int], bool]) -> Homeo:
    """h_M: on each block of a selected zone n, the copy of h from block theta_n^-1(i)."""
    chosen = selected if callable(selected) else selected.__contains__
    blocks = h.blocks

    def factory(i: int) -> Chart:
        n = zones.zone(i)
        if not chosen(n):
            return identity_chart(blocks.base(i), blocks.top(i))
        source = zones.theta_inverse(n, i)
        return _transported(blocks, blockwise_chart(h, source), source, i)

    return LazyBlockMap(blocks, factory, lambda j: (j,), label="zone-copy")


def copy_into_zones(h: Homeo, zones: ZoneSystem, n: int) -> Homeo:
    """h_n, supported on the blocks of zone n."""
    return zone_union(h, zones, (n,))


def zone_conjugator(blocks: BlockSystem, zones: ZoneSystem, psi: Perm) -> Homeo:
    """k mapping the blocks of zone m onto those of zone psi(m) by canonical pieces."""
    return lift(blocks, ZonePerm(zones, psi))


def _check_zone_hypotheses(
    i1: frozenset[int], i2: frozenset[int], j1: frozenset[int], j2: frozenset[int], psi: Perm
) -> None:
    if i1 & i2:
        raise PreconditionError(f"I1 and I2 overlap in {sorted(i1 & i2)}")
    if j1 & j2:
        raise PreconditionError(f"J1 and J2 overlap in {sorted(j1 & j2)}")
    if {psi(m) for m in i1} != j1:
        raise PreconditionError("psi does not map I1 onto J1")
    if {psi(m) for m in i2} != j2:
        raise PreconditionError("psi does not map I2 onto J2")


def verify_zone_conjugacy(
    h: Homeo,
    zones: ZoneSystem,
    i1: Iterable[int],
    i2: Iterable[int],
    j1: Iterable[int],
    j2: Iterable[int],
    psi: Perm,
    samples: Iterable[Ordinal],
) -> CheckResult:
    """h_J1^-1 h_J2 against k h_I1^-1 h_I2 k^-1 on every sample point."""
    sets = [frozenset(s) for s in (i1, i2, j1, j2)]
    _check_zone_hypotheses(*sets, psi)
    zones.check_zone_perm(psi)
    first, second, third, fourth = sets
    k = zone_conjugator(h.blocks, zones, psi)
    left = compose(inverse(zone_union(h, zones, third)), zone_union(h, zones, fourth))
    right = compose(k, inverse(zone_union(h, zones, first)), zone_union(h, zones, second), inverse(k))
    result = CheckResult("zone-conjugacy")
    for x in samples:
        result.record(left.eval(x) == right.eval(x), x)
    logger.debug("zone conjugacy: %d points, %d failures", result.instances, result.failures)
    return result


def verify_zone_supports(h: Homeo, zones: ZoneSystem, zone_indices: Iterable[int], bound: int) -> CheckResult:
    """Each zone copy moves points only inside blocks of its own zone."""
    result = CheckResult("zone-supports-disjoint")
    for n in zone_indices:
        copy = copy_into_zones(h, zones, n)
        for i in range(1, bound + 1):
            if zones.zone(i) != n:
                result.record(copy.block_chart(i).is_identity, f"zone {n} copy moves block {i}")
    return result


def verify_single_zone_reduction(
    h: Homeo,
    zones: ZoneSystem,
    j1: Iterable[int],
    j2: Iterable[int],
    i: int,
    samples: Iterable[Ordinal],
) -> CheckResult:
    """(h_J1^-1 h_J2)(h_J2^-1 h_(J1 - {i})) equals h_{i}^-1."""
    first, second = frozenset(j1), frozenset(j2)
    if i not in first:
        raise PreconditionError(f"zone {i} is not in J1")
    if first & second:
        raise PreconditionError(f"J1 and J2 overlap in {sorted(first & second)}")
    product = compose(
        inverse(zone_union(h, zones, first)),
        zone_union(h, zones, second),
        inverse(zone_union(h, zones, second)),
        zone_union(h, zones, first - {i}),
    )
    expected = inverse(copy_into_zones(h, zones, i))
    result = CheckResult("single-zone-reduction")
    for x in samples:
        result.record(product.eval(x) == expected.eval(x), x)
    return result


def verify_restriction_split(
    h: Homeo, selection: Collection[int] | Callable[[int], bool], samples: Iterable[Ordinal]
) -> CheckResult:
    """h is the product of its restrictions to a block selection and its complement."""
    chosen = selection if callable(selection) else selection.__contains__
    product = compose(restrict_to_blocks(h, chosen), restrict_to_blocks(h, lambda j: not chosen(j)))
    witness = first_disagreement(product, h, samples)
    result = CheckResult("restriction-split")
    result.record(witness is None, witness)
    return result
