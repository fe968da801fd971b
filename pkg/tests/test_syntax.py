import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from ckembed import funcalc as fc
from ckembed.ordinal import INF, OMEGA, ONE, Ordinal, succ
from ckembed.space import W1, Cantor, FiniteDiscrete, Interval, Sum, canonical_tree, to_tree
from ckembed.synthesis import (
    synth_cantor_embedding, synth_cantor_surjection, synth_interval_embedding,
    synth_kernel_surjection, synth_onepoint_embedding, synth_surjection,
)
from ckembed.syntax import (
    SpaceSyntaxError, dumps, operator_from_obj, operator_to_obj, parse_order, parse_space,
    point_from_obj, point_to_obj, print_space, region_from_obj, region_to_obj,
    surjection_from_obj, surjection_to_obj,
)
from ckembed.verify import (
    TrialConfig, random_function, random_host, random_space, sample_point,
)

from conftest import spaces
from test_region import random_region

CORPUS = """
empty
unit
cantor
fin(1)
fin(12)
I(0,1)
I(0,5)
I(1,1)
I(2,3)
I(w,1)
I(w,2)
I(w+1,1)
I(w^(2),1)
I(w^(2)*3+w+4,2)
I(w^(w),1)
I(w^(w^(w)),1)
I(w^(w+1)*2+w^(3),7)
opramp(w)
opramp(w^(2))
opramp(w^(w))
opramp(w^(3)*2)
op(w,fin(1))
op(w,fin(3))
op(aleph0,I(1,1))
op(aleph1,fin(1))
op(c,fin(2))
op(2^c,fin(1))
op(w,cantor)
op(w,unit)
op(w,op(w,fin(1)))
op(w,opramp(w))
op(w,sum(fin(1),I(2,1)))
op(w,I(w,2))
sum(fin(1))
sum(fin(1),fin(2))
sum(cantor,cantor)
sum(cantor,cantor,cantor)
sum(unit,I(w,1))
sum(I(1,1),I(1,1),I(1,1),fin(2))
sum(op(w,cantor),opramp(w^(3)),fin(3))
sum(sum(fin(1),fin(1)),cantor)
sum(empty,fin(2))
[1,omega1]
bN_minus_N
cube_omega1
[1,2^c]
der([1,omega1],0)
der([1,omega1],1)
der([1,omega1],w)
der([1,omega1],w1)
der(bN_minus_N,inf)
sum([1,omega1],cantor)
op(w,[1,omega1])
sum(I(w^(2),2),der([1,2^c],3),unit)
""".split()


def test_corpus_is_large_enough():
    assert len(CORPUS) >= 50


@pytest.mark.parametrize("text", CORPUS)
def test_corpus_round_trip(text):
    s = parse_space(text)
    printed = print_space(s)
    assert parse_space(printed) == s
    assert print_space(parse_space(printed)) == printed


@given(spaces(depth=4))
def test_random_space_round_trip(s):
    assert parse_space(print_space(s)) == s


def test_whitespace_and_aliases():
    assert parse_space(" sum( fin(1) ,\n I( w , 2 ) ) ") == Sum((FiniteDiscrete(1), Interval(OMEGA, 2)))
    assert parse_space("op(aleph0,fin(1))") == parse_space("op(w,fin(1))")
    assert parse_space("I(w^(1)*1,1)") == Interval(OMEGA, 1)


@pytest.mark.parametrize("text,line,col", [
    ("foo(1)", 1, 1),
    ("fin(", 1, 5),
    ("fin(0)", 1, 1),
    ("I(w,)", 1, 5),
    ("sum(fin(1),", 1, 12),
    ("sum(fin(1)\n,bar)", 2, 2),
    ("op(aleph7,fin(1))", 1, 4),
    ("fin(2) fin(3)", 1, 8),
    ("I(w^(,1)", 1, 6),
    ("op(3,fin(1))", 1, 1),
])
def test_errors_report_position(text, line, col):
    with pytest.raises(SpaceSyntaxError) as e:
        parse_space(text)
    assert (e.value.line, e.value.col) == (line, col)


def test_orders():
    assert parse_order("inf") is INF
    assert parse_order("w1") == W1
    assert parse_order("w+1") == succ(OMEGA)
    assert parse_order("3") == Ordinal.nat(3)


# -- JSON codecs -------------------------------------------------------------------

@given(spaces(), st.integers(0, 10 ** 6))
def test_point_round_trip(s, seed):
    rng = random.Random(seed)
    for _ in range(5):
        p = sample_point(s, rng)
        assert point_from_obj(json.loads(dumps(point_to_obj(p)))) == p
        q = to_tree(s, p)
        assert point_from_obj(json.loads(dumps(point_to_obj(q)))) == q


@given(st.integers(0, 10 ** 6))
def test_region_round_trip(seed):
    rng = random.Random(seed)
    t = canonical_tree(random_space(TrialConfig(seed=seed, max_depth=3), rng))
    r = random_region(t, rng)
    assert region_from_obj(json.loads(dumps(region_to_obj(r)))) == r


def _operators():
    K = Sum((Interval(OMEGA, 2), Cantor(), FiniteDiscrete(3)))
    yield K, synth_interval_embedding(K, OMEGA, 2)
    yield K, synth_interval_embedding(K, ONE, 1)
    yield K, synth_interval_embedding(K, Ordinal.nat(0), 3)
    yield K, synth_onepoint_embedding(K, None, ONE)
    yield K, synth_cantor_embedding(K)


@pytest.mark.parametrize("case", list(_operators()), ids=lambda c: type(c[1]).__name__)
def test_operator_round_trip(case):
    K, T = case
    text = dumps(operator_to_obj(T))
    T2 = operator_from_obj(json.loads(text))
    assert dumps(operator_to_obj(T2)) == text
    rng = random.Random(0)
    cfg = TrialConfig(max_depth=2)
    for _ in range(10):
        f = random_function(T.domain, cfg, rng)
        assert T2.apply(f) == T.apply(f)


@settings(max_examples=20)
@given(st.sampled_from([Ordinal.nat(0), ONE, OMEGA]), st.integers(1, 2), st.integers(0, 10 ** 6))
def test_surjection_round_trip(alpha, m, seed):
    K = random_host(random.Random(seed), alpha, m)
    for rho in (synth_surjection(K, alpha, m),):
        text = dumps(surjection_to_obj(rho))
        rho2 = surjection_from_obj(json.loads(text))
        assert dumps(surjection_to_obj(rho2)) == text
        rng = random.Random(seed)
        for _ in range(10):
            q = to_tree(K, sample_point(K, rng))
            assert rho2.eval(q) == rho.eval(q)


def test_cantor_surjections_round_trip():
    K = Sum((Cantor(), Interval(ONE, 1), Cantor()))
    for rho in (synth_cantor_surjection(K), synth_kernel_surjection(K, 3)):
        text = dumps(surjection_to_obj(rho))
        assert dumps(surjection_to_obj(surjection_from_obj(json.loads(text)))) == text


def test_function_json_shape():
    f = fc.sum_fn([fc.leaf_vec([1, 2]), fc.cantor_fn(1, [0, fc.Fraction(1, 2)])])
    assert json.loads(fc.to_json(f)) == {
        "sum": [{"leaf": ["1/1", "2/1"]}, {"cantor": {"depth": 1, "values": ["0/1", "1/2"]}}]}
    assert fc.to_json(fc.Fraction(3)) == '"3/1"'
