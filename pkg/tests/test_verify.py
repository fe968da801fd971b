import random

import pytest
from hypothesis import given, settings, strategies as st

from ckembed import funcalc as fc
from ckembed.cardinal import Finite, Truth3, card_le
from ckembed.ordinal import OMEGA, ONE, ZERO, Ordinal, parse_ordinal
from ckembed.space import Cantor, FiniteDiscrete, Interval, Sum, derived_card, zero_dimensional
from ckembed.synthesis import (
    Scaled, composition_operator, synth_cantor_embedding, synth_interval_embedding,
    synth_onepoint_embedding, synth_surjection,
)
from ckembed.verify import (
    ALL_CHECKS, EMBEDDING_CHECKS, Report, TrialConfig, mutant_detected, mutants,
    random_host, run_checks,
)

ALPHAS = [ZERO, ONE, Ordinal.nat(2), OMEGA, parse_ordinal("w+1")]


def test_report_bookkeeping():
    rep = Report()
    assert rep.ok and rep.summary() == "no checks run"
    rep.record("linear", True)
    rep.record("linear", False, lambda: {"trial": 4})
    rep.record("isometry", False, {"trial": 7})
    assert not rep.ok
    assert rep.counts == {"linear": [1, 1], "isometry": [0, 1]}
    assert rep.first_failure == {"check": "linear", "trial": 4}
    assert rep.summary() == "isometry: 0 passed, 1 failed; linear: 1 passed, 1 failed"


@settings(max_examples=20)
@given(st.sampled_from(ALPHAS), st.integers(1, 3), st.integers(0, 10 ** 6))
def test_random_host_has_enough_derived_points(alpha, m, seed):
    K = random_host(random.Random(seed), alpha, m)
    assert zero_dimensional(K)
    assert card_le(Finite(m), derived_card(K, alpha)) is Truth3.YES


def test_run_checks_is_deterministic():
    K = Sum((Interval(OMEGA, 2), Cantor(), FiniteDiscrete(2)))
    T = synth_interval_embedding(K, OMEGA, 2)
    cfg = TrialConfig(seed=11, trials=15, max_depth=2)
    assert run_checks(T, cfg) == run_checks(T, cfg)


def test_scaled_operator_is_caught_with_details():
    K = Sum((Interval(ONE, 1), FiniteDiscrete(2)))
    T = Scaled(synth_interval_embedding(K, ONE, 1), 3)
    rep = run_checks(T, TrialConfig(seed=0, trials=10, max_depth=2))
    assert not rep.ok
    assert rep.counts["linear"] == [10, 0]
    fail = rep.first_failure
    assert fail["check"] in ("isometry", "pnpp")
    f = fc.from_json(fail["f"])
    assert fc.norm(T.apply(f)) == 3 * fc.norm(f)


def test_stop_early_stops():
    K = Interval(ONE, 1)
    T = Scaled(synth_interval_embedding(K, ONE, 1), -1)
    rep = run_checks(T, TrialConfig(seed=0, trials=50, stop_early=True))
    assert sum(p + f for p, f in rep.counts.values()) < 50 * len(EMBEDDING_CHECKS)


def _operators():
    K = Sum((Interval(OMEGA, 2), Interval(ONE, 1), Cantor(), FiniteDiscrete(3)))
    yield synth_interval_embedding(K, OMEGA, 2)
    yield synth_interval_embedding(K, ONE, 3)
    yield synth_interval_embedding(K, ZERO, 4)
    yield synth_onepoint_embedding(K, None, ONE)
    yield synth_cantor_embedding(K)
    yield composition_operator(synth_surjection(K, OMEGA, 1))


@pytest.mark.parametrize("T", list(_operators()), ids=lambda T: type(T).__name__)
def test_every_mutant_is_detected(T):
    cfg = TrialConfig(seed=0, trials=200, max_depth=2)
    if type(T).__name__ == "Composition":
        cfg = TrialConfig(seed=0, trials=200, max_depth=2, checks=("isometry", "algebra"))
    ms = mutants(T)
    assert ms
    for label, build in ms:
        assert mutant_detected(T, build, cfg), label


def test_check_names():
    assert set(EMBEDDING_CHECKS) < set(ALL_CHECKS)
    assert {"lattice", "algebra"} == set(ALL_CHECKS) - set(EMBEDDING_CHECKS)
