"""Seeded verification campaigns behind the verify, homeo check and demo commands."""

from __future__ import annotations

import logging
import random
from typing import Callable

from sipkit.controllers.conjugator import periodic, random_target, realize_conjugator, verify_conjugator
from sipkit.controllers.factorization import Certificate, deficiency_sets, factor_certificate
from sipkit.controllers.signatures import (
    check_chart_consistency,
    check_cocycle,
    check_inverse_signature,
    check_signature_via_cofinal,
    random_cofinal,
)
from sipkit.controllers.zones import (
    DyadicZones,
    ResidueZones,
    ZoneSystem,
    verify_restriction_split,
    verify_single_zone_reduction,
    verify_zone_conjugacy,
    verify_zone_supports,
)
from sipkit.core.chart import Chart, Piece
from sipkit.core.clopen import (
    EMPTY,
    HomeoClass,
    Space,
    algebra_rank_degree,
    complement,
    degree_blocks,
    homeo_class,
    homeo_class_by_derivatives,
    in_ideal,
    quotient_project,
)
from sipkit.core.config import (
    DEFAULT_BUILD_HOMEO_INSTANCES,
    DEFAULT_CERTIFICATE_BOUND,
    DEFAULT_CERTIFICATE_INSTANCES,
    DEFAULT_CERTIFICATE_SAMPLES,
    DEFAULT_CLASSIFIER_INSTANCES,
    DEFAULT_COCYCLE_INSTANCES,
    DEFAULT_COFINAL_INSTANCES,
    DEFAULT_CONJUGATOR_BOUND,
    DEFAULT_CONJUGATOR_INSTANCES,
    DEFAULT_ORDINAL_LAW_INSTANCES,
    DEFAULT_PI_BOUND,
    DEFAULT_PI_INSTANCES,
    DEFAULT_QUOTIENT_INSTANCES,
    DEFAULT_ZONE_INSTANCES,
    RunConfig,
)
from sipkit.core.homeo import BlockSystem, Homeo, build_homeo_between, compose, inverse, lift, pi_of, unit_push
from sipkit.core.ordinal import ONE, ZERO, add, format_ordinal, left_sub, mul, omega_pow, parse_ordinal
from sipkit.core.perm import TablePerm, Zigzag, cycle
from sipkit.core.report import Report
from sipkit.core.sampling import (
    block_samples,
    random_blockwise,
    random_clopen,
    random_homeo,
    random_of_class,
    random_ordinal,
    rng_for,
)
from sipkit.core.sigcalc import ClassPair, sim
from sipkit.core.tasks import run_batches, split_batches

logger = logging.getLogger(__name__)

ORACLE_DELTA = omega_pow(4)
HOMEO_MAX_BLOCK = 8
QUOTIENT_BETAS = (1, 2, 3)

Instance = Callable[[RunConfig, Report, int], None]


def _empty_report(config: RunConfig, command: str) -> Report:
    return Report(command, config.alpha, config.degree, config.seed)


def run_campaign(config: RunConfig, command: str, count: int, instance: Instance) -> Report:
    """Run instance for indices 0..count-1 in batches and merge the partial reports in order."""

    def run_batch(batch: range) -> Report:
        partial = _empty_report(config, command)
        for index in batch:
            instance(config, partial, index)
        return partial

    report = _empty_report(config, command)
    for partial in run_batches(run_batch, split_batches(count, config.workers), config.workers):
        report.merge(partial)
    logger.debug("%s: %d instances, %s", command, count, "pass" if report.passed else "fail")
    return report


# Oracle campaigns


def _ordinal_laws(config: RunConfig, report: Report, index: int) -> None:
    rng = rng_for(config.seed, "ordinal-laws", index)
    a, b, c = (random_ordinal(rng) for _ in range(3))
    witness = f"a={a} b={b} c={c}"
    report.check("ordinal-add-associative").record(add(add(a, b), c) == add(a, add(b, c)), witness)
    report.check("ordinal-mul-associative").record(mul(mul(a, b), c) == mul(a, mul(b, c)), witness)
    report.check("ordinal-left-distributive").record(mul(a, add(b, c)) == add(mul(a, b), mul(a, c)), witness)
    identities = add(a, ZERO) == a == add(ZERO, a) and mul(a, ONE) == a == mul(ONE, a) and not mul(a, ZERO)
    report.check("ordinal-identities").record(identities, witness)
    low, high = sorted((a, b))
    report.check("left-sub-roundtrip").record(add(low, left_sub(low, high)) == high, witness)
    report.check("parse-print-roundtrip").record(parse_ordinal(format_ordinal(a)) == a, witness)


def _classifier(config: RunConfig, report: Report, index: int) -> None:
    rng = rng_for(config.seed, "classifier", index)
    p = random_clopen(rng, Space(ORACLE_DELTA), 8)
    by_type, by_derivatives = homeo_class(p), homeo_class_by_derivatives(p)
    report.check("classifier-oracle").record(by_type == by_derivatives, f"{p}: {by_type} vs {by_derivatives}")


def _quotient(config: RunConfig, report: Report, index: int) -> None:
    rng = rng_for(config.seed, "quotient", index)
    space = Space(ORACLE_DELTA)
    p, q = random_clopen(rng, space, 8), random_clopen(rng, space, 8)
    for beta in QUOTIENT_BETAS:
        witness = f"beta={beta} P={p} Q={q}"
        dp, dq = quotient_project(p, beta), quotient_project(q, beta)
        report.check("quotient-union").record(quotient_project(p | q, beta) == dp | dq, witness)
        report.check("quotient-intersect").record(quotient_project(p & q, beta) == dp & dq, witness)
        report.check("quotient-complement").record(quotient_project(complement(p), beta) == complement(dp), witness)
        report.check("quotient-kernel").record((not dp) == in_ideal(p, beta), witness)
    if index == 0:
        check = report.check("algebra-rank-degree")
        for alpha in range(1, 4):
            for a in range(1, 5):
                check.record(algebra_rank_degree(Space(omega_pow(alpha, a))) == (alpha, a), f"w^{alpha}*{a}")


def _random_class(rng: random.Random) -> HomeoClass:
    return HomeoClass(rng.randint(0, 3), rng.randint(1, 3))


def _chart_is_bijective(chart: Chart, pieces: list[Piece]) -> bool:
    for piece in pieces:
        first = add(piece.src_lo, ONE)
        if chart.apply(first) != add(piece.dst_lo, ONE) or chart.apply(piece.src_hi) != piece.dst_hi:
            return False
        if chart.apply_inverse(piece.dst_hi) != piece.src_hi:
            return False
    return True


def _build_homeo(config: RunConfig, report: Report, index: int) -> None:
    rng = rng_for(config.seed, "build-homeo", index)
    space = Space(ORACLE_DELTA)
    target = _random_class(rng)
    b = random_of_class(rng, space, target)
    c = random_of_class(rng, space, target, start=omega_pow(3, rng.randint(1, 4)))
    chart = build_homeo_between(b, c)
    pieces = list(chart)
    witness = f"B={b} C={c}"
    check = report.check("build-homeo-between")
    ok = chart.sources(space) == b and chart.targets(space) == c
    check.record(ok and _chart_is_bijective(chart, pieces), witness)


def _pi_homomorphism(config: RunConfig, report: Report, index: int) -> None:
    rng = rng_for(config.seed, "pi-homomorphism", index)
    blocks = BlockSystem(config.alpha)
    g = random_homeo(rng, blocks, HOMEO_MAX_BLOCK)
    h = random_homeo(rng, blocks, HOMEO_MAX_BLOCK)
    product = compose(h, g)
    check = report.check("pi-homomorphism")
    for i in range(1, config.bound(DEFAULT_PI_BOUND) + 1):
        check.record(pi_of(product, i) == pi_of(h, pi_of(g, i)), f"instance {index} block {i}")


def _group_laws(config: RunConfig, report: Report, index: int) -> None:
    rng = rng_for(config.seed, "group-laws", index)
    blocks = BlockSystem(config.alpha)
    f, g, h = (random_homeo(rng, blocks, HOMEO_MAX_BLOCK) for _ in range(3))
    left, right = compose(compose(f, g), h), compose(f, compose(g, h))
    cancel = compose(g, inverse(g))
    check = report.check("group-laws")
    for x in block_samples(blocks, rng, min(config.bound(), HOMEO_MAX_BLOCK + 2), 20):
        check.record(left.eval(x) == right.eval(x) and cancel.eval(x) == x, f"instance {index} at {x}")


def _non_transitivity(report: Report) -> None:
    a = ClassPair(HomeoClass(1, 1), EMPTY)
    b = ClassPair(HomeoClass(2, 1), HomeoClass(2, 1))
    c = ClassPair(EMPTY, EMPTY)
    witness = f"A={a} B={b} C={c}"
    report.check("sim-non-transitive").record(sim(a, b) and sim(b, c) and not sim(a, c), witness)


def _degree_blocks(config: RunConfig, report: Report) -> None:
    space = Space(omega_pow(config.alpha, config.degree))
    parts = degree_blocks(space)
    covered = space.empty()
    for part in parts:
        covered = covered | part
    ok = len(parts) == config.degree and covered == space.full()
    ok = ok and all(homeo_class(part) == HomeoClass(config.alpha, 1) for part in parts)
    report.check("degree-blocks").record(ok, f"delta={space.delta}")


def verify_oracle(config: RunConfig) -> Report:
    """Ordinal laws, classifier cross-check, quotients, build_homeo_between and group laws."""
    report = _empty_report(config, "verify oracle")
    campaigns = [
        (_ordinal_laws, DEFAULT_ORDINAL_LAW_INSTANCES),
        (_classifier, DEFAULT_CLASSIFIER_INSTANCES),
        (_quotient, DEFAULT_QUOTIENT_INSTANCES),
        (_build_homeo, DEFAULT_BUILD_HOMEO_INSTANCES),
        (_pi_homomorphism, DEFAULT_PI_INSTANCES),
        (_group_laws, DEFAULT_PI_INSTANCES),
    ]
    for instance, default in campaigns:
        report.merge(run_campaign(config, report.command, config.count(default), instance))
    _non_transitivity(report)
    _degree_blocks(config, report)
    return report


# Lemma campaigns


def _zone_setup(rng: random.Random, index: int) -> tuple[ZoneSystem, list[int]]:
    if index % 2 == 0:
        modulus = rng.randint(4, 6)
        return ResidueZones(modulus), list(range(1, modulus + 1))
    return DyadicZones(), list(range(1, 7))


def _zones(config: RunConfig, report: Report, index: int) -> None:
    rng = rng_for(config.seed, "zones", index)
    blocks = BlockSystem(config.alpha)
    h = random_blockwise(blocks, f"{config.seed}:{index}", label="zones")
    zones, labels = _zone_setup(rng, index)
    shuffled = labels[:]
    rng.shuffle(shuffled)
    psi = TablePerm(dict(zip(labels, shuffled)))
    picked = rng.sample(labels, rng.randint(2, len(labels)))
    split = rng.randint(1, len(picked) - 1)
    i1, i2 = set(picked[:split]), set(picked[split:])
    j1, j2 = {psi(n) for n in i1}, {psi(n) for n in i2}
    points = block_samples(blocks, rng, config.bound(), config.sample_count())
    report.add(verify_zone_conjugacy(h, zones, i1, i2, j1, j2, psi, points))
    report.add(verify_zone_supports(h, zones, sorted(j1 | j2), config.bound()))
    report.add(verify_single_zone_reduction(h, zones, j1, j2, rng.choice(sorted(j1)), points))
    report.add(verify_restriction_split(h, lambda j: zones.zone(j) in j1, points))


def verify_lemma21(config: RunConfig) -> Report:
    """Zone copies of a blockwise map and their conjugacy by the zone permutation."""
    return run_campaign(config, "verify lemma21", config.count(DEFAULT_ZONE_INSTANCES), _zones)


def _cofinal(config: RunConfig, report: Report, index: int) -> None:
    rng = rng_for(config.seed, "cofinal", index)
    g = random_homeo(rng, BlockSystem(config.alpha), HOMEO_MAX_BLOCK)
    i = rng.randint(1, config.bound())
    b = random_cofinal(g, i, rng)
    report.check("signature-via-cofinal").record(check_signature_via_cofinal(g, i, b), f"block {i}, B={b}, g={g.describe()}")


def verify_lemma23(config: RunConfig) -> Report:
    """Signatures computed through random cofinal subsets."""
    return run_campaign(config, "verify lemma23", config.count(DEFAULT_COFINAL_INSTANCES), _cofinal)


def _cocycle(config: RunConfig, report: Report, index: int) -> None:
    rng = rng_for(config.seed, "cocycle", index)
    blocks = BlockSystem(config.alpha)
    g = random_homeo(rng, blocks, HOMEO_MAX_BLOCK)
    h = random_homeo(rng, blocks, HOMEO_MAX_BLOCK)
    cocycle, inverse_law = report.check("cocycle"), report.check("inverse-signature")
    for i in range(1, config.bound() + 1):
        witness = f"instance {index} block {i}"
        cocycle.record(check_cocycle(g, h, i), witness)
        inverse_law.record(check_inverse_signature(g, i), witness)


def verify_lemma24(config: RunConfig) -> Report:
    """The signature cocycle on random pairs, every block up to the bound."""
    return run_campaign(config, "verify lemma24", config.count(DEFAULT_COCYCLE_INSTANCES), _cocycle)


def _conjugator(config: RunConfig, report: Report, index: int) -> None:
    rng = rng_for(config.seed, "conjugator", index)
    blocks = BlockSystem(config.alpha)
    sigma = Zigzag()
    g = lift(blocks, sigma)
    if index % 2:
        g = compose(g, unit_push(blocks, rng.randint(1, HOMEO_MAX_BLOCK)))
    if index == config.count(DEFAULT_CONJUGATOR_INSTANCES) - 1:
        top = HomeoClass(config.alpha - 1, 1)
        target = periodic([ClassPair(top, EMPTY), ClassPair(EMPTY, HomeoClass(0, 2)), ClassPair(top, top)])
    else:
        target = random_target(rng, config.alpha)
    bound = config.bound(DEFAULT_CONJUGATOR_BOUND)
    h = realize_conjugator(g, target, sigma, bound)
    for result in verify_conjugator(g, target, sigma, h, bound):
        report.add(result)


def verify_lemma25(config: RunConfig) -> Report:
    """Conjugators realizing random and periodic targets along the zigzag cycle."""
    return run_campaign(config, "verify lemma25", config.count(DEFAULT_CONJUGATOR_INSTANCES), _conjugator)


def _certificate(config: RunConfig, report: Report, index: int) -> None:
    rng = rng_for(config.seed, "certificate", index)
    blocks = BlockSystem(config.alpha)
    g = compose(lift(blocks, Zigzag()), random_homeo(rng, blocks, HOMEO_MAX_BLOCK, steps=2))
    bound = config.bound(DEFAULT_CERTIFICATE_BOUND)
    samples = config.sample_count(DEFAULT_CERTIFICATE_SAMPLES)
    certificate = factor_certificate(g, Zigzag(), bound, samples, seed=f"{config.seed}:{index}")
    for result in certificate.checks:
        report.add(result)


def verify_lemma26(config: RunConfig) -> Report:
    """Four-factor certificates for random maps over the zigzag cycle."""
    return run_campaign(config, "verify lemma26", config.count(DEFAULT_CERTIFICATE_INSTANCES), _certificate)


VERIFY_CAMPAIGNS: dict[str, Callable[[RunConfig], Report]] = {
    "lemma21": verify_lemma21,
    "lemma23": verify_lemma23,
    "lemma24": verify_lemma24,
    "lemma25": verify_lemma25,
    "lemma26": verify_lemma26,
    "oracle": verify_oracle,
}


def homeo_check(g: Homeo, config: RunConfig) -> Report:
    """Group laws, pi homomorphism, chart consistency and the inverse signature law for one map."""
    report = _empty_report(config, "homeo check")
    rng = rng_for(config.seed, "homeo-check")
    points = block_samples(g.blocks, rng, config.bound(), config.sample_count())
    twice, back = compose(g, g), inverse(g)
    laws = report.check("group-laws")
    for x in points:
        laws.record(back.eval(g.eval(x)) == x and g.eval(back.eval(x)) == x, x)
    homomorphism = report.check("pi-homomorphism")
    consistency = report.check("chart-consistency")
    inverse_law = report.check("inverse-signature")
    for i in range(1, config.bound() + 1):
        homomorphism.record(pi_of(twice, i) == pi_of(g, pi_of(g, i)), f"block {i}")
        consistency.record(check_chart_consistency(g, i), f"block {i}")
        inverse_law.record(check_inverse_signature(g, i), f"block {i}")
    return report


def demo_example(blocks: BlockSystem) -> Homeo:
    """The zigzag lift after a unit push and a three-cycle of blocks."""
    return compose(lift(blocks, Zigzag()), unit_push(blocks, 1), lift(blocks, cycle(2, 3, 5)))


def demo_factor(config: RunConfig) -> tuple[Report, Certificate, list[str]]:
    """Factor the demo map and describe the first few blocks of each factor."""
    blocks = BlockSystem(config.alpha)
    g = demo_example(blocks)
    certificate = factor_certificate(g, Zigzag(), config.bound(), config.sample_count(), seed=config.seed)
    report = _empty_report(config, "demo factor")
    for result in certificate.checks:
        report.add(result)
    lines = [
        f"g = {g.describe()}",
        f"sigma = {certificate.sigma.describe()}",
        f"h = {certificate.h.describe()}",
        f"envelope order type = {format_ordinal(certificate.envelopes.order_type)}",
    ]
    for i in range(1, min(config.bound(), 6) + 1):
        b, c = deficiency_sets(certificate.w, i)
        lines.append(
            f"block {i}: pi(k') = {pi_of(certificate.k_prime, i)}, "
            f"B = {b} {homeo_class(b)}, C = {c} {homeo_class(c)}, D = {certificate.envelopes[i]}"
        )
    return report, certificate, lines
