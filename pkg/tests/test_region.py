import random

import pytest
from hypothesis import given, strategies as st

from ckembed import funcalc as fc
from ckembed.cardinal import CONTINUUM, ZERO_CARD, Finite, Truth3, card_le
from ckembed.ordinal import OMEGA, ONE, ZERO, Ordinal
from ckembed.region import (
    NONE, WHOLE, CantorSelect, InvalidRegion, LeafSelect, OnePointSelect, SumSelect,
    complement, contains, cylinder, difference, disjoint, in_tree_derived, intersect,
    is_empty, leftmost, member, neighbourhood, normalize, region_derived_card, union,
)
from ckembed.space import (
    Cantor, FiniteDiscrete, Interval, OnePoint, Sum, canonical_tree, derived_card,
    from_tree, to_tree, tree_member,
)
from ckembed.verify import TrialConfig, random_space, sample_point


def random_region(t, rng, depth=3):
    if depth == 0 or rng.random() < 0.2:
        return rng.choice([WHOLE, NONE])
    if isinstance(t, FiniteDiscrete):
        return LeafSelect(frozenset(i for i in range(t.n) if rng.random() < 0.5))
    if isinstance(t, Sum):
        return SumSelect(tuple(random_region(p, rng, depth - 1) for p in t.parts))
    if isinstance(t, OnePoint):
        copies = rng.sample(range(1, 6), rng.randint(0, 3))
        return OnePointSelect(rng.random() < 0.5, tuple(sorted(
            (n, random_region(tree_member(t, n), rng, depth - 1)) for n in copies)))
    if isinstance(t, Cantor):
        d = rng.randint(0, 3)
        return CantorSelect(d, frozenset(
            tuple((i >> (d - 1 - j)) & 1 for j in range(d))
            for i in range(2 ** d) if rng.random() < 0.5))
    return rng.choice([WHOLE, NONE])


@st.composite
def trees_with_regions(draw, k=2):
    seed = draw(st.integers(0, 10 ** 6))
    rng = random.Random(seed)
    s = random_space(TrialConfig(seed=seed, max_depth=3, allow_unit=False), rng)
    t = canonical_tree(s)
    return s, t, [random_region(t, rng) for _ in range(k)], rng


def tree_points(s, rng, n=25):
    return [to_tree(s, sample_point(s, rng)) for _ in range(n)]


@given(trees_with_regions(2))
def test_boolean_ops_match_pointwise_membership(case):
    s, t, (a, b), rng = case
    ops = [
        (intersect(t, a, b), lambda x, y: x and y),
        (union(t, a, b), lambda x, y: x or y),
        (difference(t, a, b), lambda x, y: x and not y),
    ]
    for q in tree_points(s, rng):
        x, y = member(t, a, q), member(t, b, q)
        for r, op in ops:
            assert member(t, r, q) == op(x, y)
        assert member(t, complement(t, a), q) == (not x)


@given(trees_with_regions(1))
def test_normalize_preserves_membership_and_is_idempotent(case):
    s, t, (a,), rng = case
    n = normalize(t, a)
    assert normalize(t, n) == n
    for q in tree_points(s, rng):
        assert member(t, n, q) == member(t, a, q)


@given(trees_with_regions(2))
def test_lattice_laws(case):
    _, t, (a, b), _ = case
    assert is_empty(t, difference(t, a, a))
    assert normalize(t, union(t, a, complement(t, a))) == WHOLE
    assert union(t, a, b) == union(t, b, a)
    assert complement(t, complement(t, a)) == normalize(t, a)
    # de Morgan
    assert complement(t, union(t, a, b)) == intersect(t, complement(t, a), complement(t, b))
    assert contains(t, union(t, a, b), a)
    assert disjoint(t, a, complement(t, a))


@given(trees_with_regions(1))
def test_indicator_evaluates_to_membership(case):
    s, t, (a,), rng = case
    f = fc.indicator(t, a)
    for q in tree_points(s, rng):
        assert fc.eval_fn(f, q) == int(member(t, a, q))


@given(trees_with_regions(1))
def test_leftmost_is_in_region_and_derived(case):
    _, t, (a,), _ = case
    for beta in (ZERO, ONE, OMEGA):
        q = leftmost(t, a, beta)
        if q is None:
            continue
        assert member(t, a, q) and in_tree_derived(t, q, beta)
        nb = neighbourhood(t, a, q)
        assert contains(t, a, nb) and member(t, nb, q)


@given(trees_with_regions(1))
def test_region_rank_bounded_by_space(case):
    _, t, (a,), _ = case
    for beta in (ZERO, ONE, OMEGA):
        assert card_le(region_derived_card(t, a, beta), derived_card(t, beta)) is Truth3.YES


def test_cantor_cylinders_reduce():
    c = Cantor()
    assert normalize(c, CantorSelect(1, frozenset({(0,), (1,)}))) == WHOLE
    assert union(c, cylinder("00"), cylinder("01")) == cylinder("0")
    assert region_derived_card(c, cylinder("1"), OMEGA) == CONTINUUM
    assert region_derived_card(c, NONE, ZERO) == ZERO_CARD


def test_onepoint_rank_counts():
    t = canonical_tree(Interval(ONE, 1))
    tail = OnePointSelect(True, ((1, NONE), (2, NONE)))
    assert region_derived_card(t, tail, ONE) == Finite(1)
    assert region_derived_card(t, tail, Ordinal.nat(2)) == ZERO_CARD
    q = to_tree(Interval(ONE, 1), from_tree(Interval(ONE, 1), leftmost(t, tail, ONE)))
    assert member(t, tail, q)


def test_invalid_selectors():
    with pytest.raises(InvalidRegion):
        normalize(FiniteDiscrete(2), LeafSelect(frozenset({5})))
    with pytest.raises(InvalidRegion):
        normalize(Sum((FiniteDiscrete(1),)), SumSelect((WHOLE, WHOLE)))
    with pytest.raises(InvalidRegion):
        normalize(Cantor(), LeafSelect(frozenset()))
