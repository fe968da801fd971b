import random

import pytest
from hypothesis import given, settings, strategies as st

from ckembed.cardinal import ALEPH0, Finite, Truth3
from ckembed.decide import (
    RULE_CCC, RULE_DERIVED_PROFILE, RULE_FINITE_DIM, RULE_HEIGHT, RULE_ISOMETRIC,
    RULE_MILJUTIN, RULE_NONSCATTERED, RULE_SZLENK, NotMetrizable, cellularity_bound,
    check_condition, isometric_embeds, isomorphic_embeds, szlenk_of,
)
from ckembed.ordinal import INF, OMEGA, ONE, Ordinal, gamma_of, omega_pow
from ckembed.space import (
    Cantor, FiniteDiscrete, Interval, Sum, SymbolicAtom, Unit, derived_card, height,
    is_constructive, scattered, zero_dimensional,
)
from ckembed.verify import TrialConfig, random_space, run_checks

N = Ordinal.nat
YES, NO = Truth3.YES, Truth3.NO


@st.composite
def pairs(draw):
    seed = draw(st.integers(0, 10 ** 6))
    rng = random.Random(seed)
    cfg = TrialConfig(seed=seed, max_depth=2, allow_unit=draw(st.booleans()))
    return random_space(cfg, rng), random_space(cfg, rng), seed


# -- Szlenk index ---------------------------------------------------------------

@pytest.mark.parametrize("space,sz", [
    (Interval(OMEGA, 1), omega_pow(N(2))), (Unit(), INF), (FiniteDiscrete(7), ONE),
    (Interval(ONE, 1), OMEGA),
])
def test_szlenk_examples(space, sz):
    assert szlenk_of(space) == sz


@given(pairs())
def test_szlenk_of_sum_is_max(case):
    a, b, _ = case
    s = Sum((a, b))
    assert szlenk_of(s) == max(szlenk_of(a), szlenk_of(b), key=lambda x: (x is INF, x))
    assert szlenk_of(s) == gamma_of(height(s))


# -- isometric and isomorphic decisions --------------------------------------------

def test_isometric_examples():
    v = isometric_embeds(Interval(OMEGA, 1), Sum((Interval(OMEGA, 2), FiniteDiscrete(3))))
    assert v.answer is YES and v.rule == RULE_ISOMETRIC and v.certificate is not None
    v = isometric_embeds(Cantor(), Interval(N(5), 1))
    assert v.answer is NO and v.rule == RULE_NONSCATTERED
    assert isometric_embeds(Interval(N(0), 2), FiniteDiscrete(1)).answer is NO
    v = isometric_embeds(Interval(OMEGA, 1), Unit())
    assert v.answer is YES and v.rule == RULE_MILJUTIN and v.certificate is None
    with pytest.raises(NotMetrizable):
        isometric_embeds(SymbolicAtom("[1,omega1]"), Unit())


def test_isomorphic_examples():
    v = isomorphic_embeds(Interval(N(2), 1), Interval(OMEGA, 1))
    assert v.answer is YES and v.rule == RULE_SZLENK
    assert isomorphic_embeds(Unit(), Interval(omega_pow(OMEGA), 5)).answer is NO
    assert isomorphic_embeds(Interval(ONE, 1), FiniteDiscrete(9)).answer is NO
    v = isomorphic_embeds(FiniteDiscrete(4), FiniteDiscrete(3))
    assert v.answer is NO and v.rule == RULE_FINITE_DIM


@settings(max_examples=40)
@given(pairs())
def test_isometric_agrees_with_condition_iv_and_implies_isomorphic(case):
    L, K, _ = case
    v = isometric_embeds(L, K)
    assert v.answer is check_condition("iv", L, K).answer
    if v.answer is YES:
        assert isomorphic_embeds(L, K).answer is YES


@settings(max_examples=30)
@given(pairs())
def test_certificates_pass_checks(case):
    L, K, seed = case
    for v in (isometric_embeds(L, K), isomorphic_embeds(L, K)):
        if v.certificate is not None:
            rep = run_checks(v.certificate, TrialConfig(seed=seed, trials=5, max_depth=2))
            assert rep.ok, rep.first_failure


@settings(max_examples=40)
@given(pairs())
def test_yes_on_constructive_zero_dimensional_carries_certificate(case):
    L, K, _ = case
    v = isometric_embeds(L, K)
    if v.answer is YES and scattered(L) and derived_card(L, N(0)) != Finite(0) \
            and is_constructive(K) and zero_dimensional(K):
        assert v.certificate is not None


@settings(max_examples=40)
@given(pairs())
def test_profile_condition_implies_top_condition(case):
    L, K, _ = case
    if check_condition("iii", L, K).answer is YES:
        assert check_condition("iv", L, K).answer is YES
    assert check_condition("iii", L, L).answer is YES
    assert check_condition("iii", L, Sum((L, K))).answer is YES


# -- counterexample table ---------------------------------------------------------------

@pytest.mark.parametrize("ch", [False, True])
def test_counterexample_rows(ch):
    K = Unit()
    w1 = SymbolicAtom("[1,omega1]")
    assert check_condition("iv", w1, K, ch).answer is YES
    v = check_condition("ii", w1, K, ch)
    assert v.answer is NO and v.rule == RULE_CCC
    for atom in ("bN_minus_N", "[1,2^c]"):
        L = SymbolicAtom(atom)
        assert check_condition("iv", L, K, ch).answer is YES
        v = check_condition("iii", L, K, ch)
        assert v.answer is NO and v.rule == RULE_DERIVED_PROFILE
        assert v.note.startswith("alpha = 0:")


def test_height_refuter():
    v = check_condition("cell_necessary", Interval(N(3), 1), Interval(ONE, 5))
    assert v.answer is NO and v.rule == RULE_HEIGHT


def test_unknown_condition():
    with pytest.raises(ValueError):
        check_condition("vii", Unit(), Unit())


# -- cellularity bounds -----------------------------------------------------------------

def test_cellularity_examples():
    K = Sum((Interval(N(2), 1),) * 3 + (FiniteDiscrete(2),))
    assert cellularity_bound(K, N(2)) == (Finite(3), 3)
    assert cellularity_bound(Interval(N(2), 1), N(3)) == (Finite(0), 0)
    assert cellularity_bound(Sum((Cantor(), Cantor())), INF) == (ALEPH0, 8)
    assert cellularity_bound(Unit(), INF) == (ALEPH0, 0)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_cellularity_attained_on_copies(n):
    K = Sum((Interval(OMEGA, 1),) * n + (Interval(ONE, 2),))
    assert cellularity_bound(K, OMEGA) == (Finite(n), n)
