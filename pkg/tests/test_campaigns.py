from __future__ import annotations

from types import SimpleNamespace

import pytest

from sipkit.controllers import campaigns
from sipkit.controllers.campaigns import (
    VERIFY_CAMPAIGNS,
    demo_example,
    demo_factor,
    homeo_check,
    run_campaign,
    verify_lemma24,
    verify_lemma25,
    verify_lemma26,
    verify_oracle,
)
from sipkit.core.config import (
    DEFAULT_BLOCKS,
    DEFAULT_CERTIFICATE_BOUND,
    DEFAULT_CERTIFICATE_INSTANCES,
    DEFAULT_CERTIFICATE_SAMPLES,
    DEFAULT_COCYCLE_INSTANCES,
    DEFAULT_COFINAL_INSTANCES,
    DEFAULT_CONJUGATOR_BOUND,
    DEFAULT_CONJUGATOR_INSTANCES,
    DEFAULT_PI_BOUND,
    DEFAULT_PI_INSTANCES,
    DEFAULT_ZONE_INSTANCES,
    RunConfig,
)
from sipkit.core.homeo import BlockSystem, lift, unit_push
from sipkit.core.perm import Zigzag

SMALL = RunConfig(blocks=6, samples=20, instances=2)

EXPECTED_CHECKS = {
    "lemma21": ["zone-conjugacy", "zone-supports-disjoint", "single-zone-reduction", "restriction-split"],
    "lemma23": ["signature-via-cofinal"],
    "lemma24": ["cocycle", "inverse-signature"],
    "lemma25": ["rs-recurrence", "pi-trivial", "signature-target"],
}


@pytest.mark.parametrize("name", sorted(VERIFY_CAMPAIGNS))
def test_small_campaigns_pass(name):
    report = VERIFY_CAMPAIGNS[name](SMALL)
    assert report.command == f"verify {name}"
    assert report.passed, [(c.name, c.first_counterexample) for c in report.checks if not c.passed]
    if name in EXPECTED_CHECKS:
        assert [c.name for c in report.checks] == EXPECTED_CHECKS[name]


def test_oracle_lists_every_check():
    report = verify_oracle(RunConfig(instances=3, blocks=4, samples=10))
    names = [c.name for c in report.checks]
    assert names[:6] == [
        "ordinal-add-associative",
        "ordinal-mul-associative",
        "ordinal-left-distributive",
        "ordinal-identities",
        "left-sub-roundtrip",
        "parse-print-roundtrip",
    ]
    for name in ("classifier-oracle", "quotient-kernel", "algebra-rank-degree", "build-homeo-between",
                 "pi-homomorphism", "group-laws", "sim-non-transitive", "degree-blocks"):
        assert name in names
    assert report.check("ordinal-add-associative").instances == 3
    assert report.check("algebra-rank-degree").instances == 12


def test_campaigns_are_seeded():
    config = RunConfig(blocks=5, instances=4, seed=11)
    assert verify_lemma24(config).to_dict() == verify_lemma24(config).to_dict()


def test_workers_do_not_change_results():
    serial = verify_lemma24(RunConfig(blocks=5, instances=5, seed=3, workers=1))
    threaded = verify_lemma24(RunConfig(blocks=5, instances=5, seed=3, workers=3))
    assert serial.to_dict() == threaded.to_dict()


def test_run_campaign_counts_and_failures():
    def instance(config, report, index):
        report.check("even").record(index % 2 == 0, f"index {index}")

    report = run_campaign(RunConfig(workers=2), "verify custom", 5, instance)
    check = report.check("even")
    assert (check.instances, check.failures) == (5, 2)
    assert check.first_counterexample == "index 1"
    assert not report.passed


def test_homeo_check():
    blocks = BlockSystem(2)
    config = RunConfig(blocks=6, samples=20)
    for g in (demo_example(blocks), lift(blocks, Zigzag()), unit_push(blocks, 4)):
        report = homeo_check(g, config)
        assert report.passed
        assert [c.name for c in report.checks] == [
            "group-laws",
            "pi-homomorphism",
            "chart-consistency",
            "inverse-signature",
        ]


def test_demo_factor():
    report, certificate, lines = demo_factor(RunConfig(blocks=8, samples=20))
    assert report.passed
    assert certificate.bound == 8
    assert lines[0].startswith("g = (compose (blockmap (zigzag))")
    assert lines[3] == "envelope order type = w^2"
    assert lines[4].startswith("block 1: pi(k') = 2")
    assert len(lines) == 4 + 6


@pytest.mark.parametrize("alpha", [1, 2, 3])
@pytest.mark.parametrize("name", ["lemma23", "lemma24"])
def test_signature_campaigns_across_alpha(name, alpha):
    report = VERIFY_CAMPAIGNS[name](RunConfig(alpha=alpha, blocks=6, instances=3))
    assert report.passed
    assert report.alpha == alpha


def test_pi_check_reaches_its_own_bound():
    report = verify_oracle(RunConfig(instances=1))
    assert report.check("pi-homomorphism").instances == DEFAULT_PI_BOUND
    assert verify_oracle(RunConfig(instances=1, blocks=7)).check("pi-homomorphism").instances == 7


def test_conjugator_campaign_reaches_its_own_bound():
    report = verify_lemma25(RunConfig(instances=1))
    assert report.passed
    for name in EXPECTED_CHECKS["lemma25"]:
        assert report.check(name).instances == DEFAULT_CONJUGATOR_BOUND


def test_certificate_campaign_uses_its_own_sizes(monkeypatch):
    seen = []

    def record(g, sigma, bound, samples, seed=0):
        seen.append((bound, samples))
        return SimpleNamespace(checks=[])

    monkeypatch.setattr(campaigns, "factor_certificate", record)
    verify_lemma26(RunConfig(instances=2))
    assert seen == [(DEFAULT_CERTIFICATE_BOUND, DEFAULT_CERTIFICATE_SAMPLES)] * 2
    seen.clear()
    verify_lemma26(RunConfig(instances=1, blocks=5, samples=7))
    assert seen == [(5, 7)]


ACCEPTANCE_SIZES = {
    "lemma21": ("zone-conjugacy", DEFAULT_ZONE_INSTANCES * 2 * DEFAULT_BLOCKS),
    "lemma23": ("signature-via-cofinal", DEFAULT_COFINAL_INSTANCES),
    "lemma24": ("cocycle", DEFAULT_COCYCLE_INSTANCES * DEFAULT_BLOCKS),
}


@pytest.mark.slow
@pytest.mark.parametrize("alpha", [1, 2, 3])
@pytest.mark.parametrize("name", sorted(ACCEPTANCE_SIZES))
def test_acceptance_sizes_across_alpha(name, alpha):
    report = VERIFY_CAMPAIGNS[name](RunConfig(alpha=alpha))
    assert report.passed, [(c.name, c.first_counterexample) for c in report.checks if not c.passed]
    check, at_least = ACCEPTANCE_SIZES[name]
    assert report.check(check).instances >= at_least


@pytest.mark.slow
def test_acceptance_size_conjugator():
    report = verify_lemma25(RunConfig())
    assert report.passed
    assert report.check("signature-target").instances == DEFAULT_CONJUGATOR_INSTANCES * DEFAULT_CONJUGATOR_BOUND


@pytest.mark.slow
def test_acceptance_size_certificate():
    report = verify_lemma26(RunConfig())
    assert report.passed
    expected = DEFAULT_CERTIFICATE_INSTANCES * DEFAULT_CERTIFICATE_BOUND
    assert report.check("w-prime-pi-trivial").instances == expected


@pytest.mark.slow
def test_acceptance_size_oracle():
    report = verify_oracle(RunConfig())
    assert report.passed
    assert report.check("pi-homomorphism").instances == DEFAULT_PI_INSTANCES * DEFAULT_PI_BOUND
