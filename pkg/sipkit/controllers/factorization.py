"""Four-factor decomposition g = k' l w' h^-1 with support and block side conditions."""

from __future__ import annotations

import logging
import random
import threading
from dataclasses import dataclass, field

from sipkit.controllers.conjugator import conjugate, realize_conjugator, signature_target
from sipkit.core.chart import Chart, ChartError
from sipkit.core.clopen import ClopenSet, homeo_class, order_type
from sipkit.core.homeo import (
    BlockSystem,
    Homeo,
    HomeoError,
    InducedPerm,
    LazyBlockMap,
    build_homeo_between,
    compose,
    in_K,
    inverse,
    lift,
    pi_of,
    signature,
)
from sipkit.core.ordinal import OMEGA, Ordinal, leading_term, mul, omega_pow
from sipkit.core.perm import Perm, require_single_cycle
from sipkit.core.perm import compose as perm_compose
from sipkit.core.perm import inverse as perm_inverse
from sipkit.core.report import CheckResult
from sipkit.core.sampling import block_samples, chart_endpoints
from sipkit.core.sigcalc import ZERO_PAIR, sim

logger = logging.getLogger(__name__)


def deficiency_sets(w: Homeo, i: int) -> tuple[ClopenSet, ClopenSet]:
    """(B_i, C_i): the points of A_i that w sends out, and the points of A_i that w misses."""
    found = signature(w, i)
    if found.target != i:
        raise HomeoError(f"map sends block {i} to block {found.target}")
    return found.q, found.p


def straighten(w: Homeo, bound: int = 0) -> Homeo:
    """l agreeing with w off the B_i and sending each B_i onto C_i.

    Blocks up to bound are built eagerly so a class mismatch surfaces here.
    """
    blocks = w.blocks

    def factory(i: int) -> Chart:
        b, c = deficiency_sets(w, i)
        staying = [piece for piece in w.block_chart(i) if blocks.target_block(piece) == i]
        try:
            return Chart(staying + list(build_homeo_between(b, c)))
        except HomeoError as exc:
            raise HomeoError(f"block {i}: {exc}") from exc

    straightened = LazyBlockMap(blocks, factory, lambda j: (j,), label="straighten")
    for i in range(1, bound + 1):
        straightened.block_chart(i)
    return straightened


class Envelopes:
    """D_i = (base_i, base_i + w^(alpha-1) * u_i] with u_i >= i and B_i inside D_i."""

    def __init__(self, blocks: BlockSystem, w: Homeo) -> None:
        self.blocks = blocks
        self.w = w
        self._cache: dict[int, ClopenSet] = {}
        self._lock = threading.Lock()

    def units(self, i: int) -> int:
        b, _ = deficiency_sets(self.w, i)
        needed = 0
        if b:
            top = b.max_point()
            needed = self.blocks.unit_of(top, i)
            if top != self.blocks.unit_point(i, needed):
                needed += 1
        return max(i, needed)

    def __getitem__(self, i: int) -> ClopenSet:
        with self._lock:
            cached = self._cache.get(i)
        if cached is None:
            upper = self.blocks.unit_point(i, self.units(i))
            cached = ClopenSet(self.blocks.space, ((self.blocks.base(i), upper),))
            with self._lock:
                self._cache.setdefault(i, cached)
        return cached

    def partial_order_type(self, n: int) -> Ordinal:
        """Order type of D_1 | ... | D_n."""
        union = self.blocks.space.empty()
        for i in range(1, n + 1):
            union = union | self[i]
        return order_type(union)

    @property
    def order_type(self) -> Ordinal:
        """Supremum of the partial types w^(alpha-1) * (u_1 + ... + u_n); u_i >= i keeps the sums unbounded."""
        exponent, _ = leading_term(self.partial_order_type(1))
        return mul(omega_pow(exponent), OMEGA)


@dataclass
class Certificate:
    g: Homeo
    sigma: Perm
    h: Homeo
    k_prime: Homeo
    l: Homeo
    w_prime: Homeo
    w: Homeo
    envelopes: Envelopes
    bound: int
    samples: int
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def check(self, name: str) -> CheckResult:
        for result in self.checks:
            if result.name == name:
                return result
        raise KeyError(name)


def _outside_is_identity(chart: Chart, outside: ClopenSet) -> bool:
    try:
        return chart.clip_to(outside).is_identity
    except ChartError:
        return False


def build_factors(g: Homeo, sigma: Perm, bound: int) -> dict[str, Homeo]:
    """h, k0, the conjugator c, k' = c^-1 k0 c, u = g h and w = k'^-1 u."""
    require_single_cycle(sigma)
    blocks = g.blocks
    h = lift(blocks, perm_compose(perm_inverse(InducedPerm(g)), sigma))
    u = compose(g, h)
    k0 = lift(blocks, sigma)
    c = realize_conjugator(k0, signature_target(u), sigma, bound, avoid=u)
    k_prime = conjugate(c, k0)
    w = compose(inverse(k_prime), u)
    return {"h": h, "u": u, "k0": k0, "c": c, "k_prime": k_prime, "w": w}


def factor_certificate(g: Homeo, sigma: Perm, bound: int, samples: int, seed: int | str = 0) -> Certificate:
    """Factor g and check every side condition on blocks up to bound."""
    blocks = g.blocks
    factors = build_factors(g, sigma, bound)
    h, u, k_prime, w = factors["h"], factors["u"], factors["k_prime"], factors["w"]
    l = straighten(w)
    w_prime = compose(inverse(l), w)
    envelopes = Envelopes(blocks, w)
    certificate = Certificate(g, sigma, h, k_prime, l, w_prime, w, envelopes, bound, samples)

    induced = InducedPerm(g)
    images = CheckResult("pi-images")
    signatures = CheckResult("k-prime-signature")
    trivial = CheckResult("w-signature-trivial")
    classes = CheckResult("deficiency-classes")
    for i in range(1, bound + 1):
        images.record(pi_of(h, i) == induced.inverse_apply(sigma(i)), f"h at block {i}")
        images.record(pi_of(k_prime, i) == sigma(i), f"k' at block {i}")
        images.record(pi_of(w, i) == i, f"w at block {i}")
        signatures.record(sim(signature(k_prime, i).pair, signature(u, i).pair), f"block {i}")
        trivial.record(sim(signature(w, i).pair, ZERO_PAIR), f"block {i}")
        b, c = deficiency_sets(w, i)
        classes.record(homeo_class(b) == homeo_class(c), f"block {i}: {homeo_class(b)} vs {homeo_class(c)}")
    certificate.checks.extend([images, signatures, trivial, classes])
    if not classes.passed:
        logger.debug("deficiency classes differ; skipping the straightened factors")
        return certificate

    blockwise = CheckResult("l-blockwise")
    blockwise.record(bool(in_K(l, bound)), f"up to block {bound}")
    straight = CheckResult("w-prime-pi-trivial")
    support = CheckResult("w-prime-support")
    for i in range(1, bound + 1):
        straight.record(pi_of(l, i) == i and pi_of(w_prime, i) == i, f"block {i}")
        outside = blocks.block(i) - envelopes[i]
        support.record(_outside_is_identity(w_prime.block_chart(i), outside), f"block {i}")

    rng = random.Random(f"{seed}:certificate")
    points = chart_endpoints([h, k_prime, l, w_prime], bound) + block_samples(blocks, rng, bound, samples)
    product = compose(k_prime, l, w_prime, inverse(h))
    identity = CheckResult("factor-identity")
    for x in dict.fromkeys(points):
        identity.record(product.eval(x) == g.eval(x), x)
    certificate.checks.extend([blockwise, straight, support, identity])
    logger.debug("certificate at bound %d: %s", bound, "pass" if certificate.passed else "fail")
    return certificate
