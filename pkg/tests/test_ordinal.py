import random

import pytest
from hypothesis import given, strategies as st

from ckembed.ordinal import (
    INF, OMEGA, ONE, ZERO, Kind, Opaque, Ordinal, OrdinalError, OrdinalSyntaxError,
    SubtractUnderflow, add, classify, ext_text, fund_seq, gamma_of, is_gamma, is_limit,
    left_subtract, make, mul_nat, omega_div, omega_mul, omega_pow, parse_ext_ordinal,
    parse_ordinal, pred, succ, to_text,
)

from ckembed.verify import random_below

from conftest import ordinals, small_ordinals


# -- oracle: ordinals below w^w as dense coefficient vectors -------------------

def to_vec(a: Ordinal, width=8):
    v = [0] * width
    for e, c in a.terms:
        v[e.as_int()] = c
    return v


def vec_add(u, v):
    top = max((i for i, c in enumerate(v) if c), default=None)
    if top is None:
        return list(u)
    return [v[i] if i < top else (u[i] + v[i] if i == top else u[i]) for i in range(len(u))]


def vec_cmp(u, v):
    for a, b in zip(reversed(u), reversed(v)):
        if a != b:
            return (a > b) - (a < b)
    return 0


finite_exp = st.lists(st.integers(0, 4), min_size=8, max_size=8).map(
    lambda cs: make([(i, c) for i, c in reversed(list(enumerate(cs))) if c]))


@given(finite_exp, finite_exp)
def test_add_matches_vector_oracle(a, b):
    assert to_vec(add(a, b)) == vec_add(to_vec(a), to_vec(b))


@given(finite_exp, finite_exp)
def test_order_matches_vector_oracle(a, b):
    want = vec_cmp(to_vec(a), to_vec(b))
    assert (a < b) == (want < 0) and (a == b) == (want == 0)


# -- algebraic laws ------------------------------------------------------------

@given(ordinals(), ordinals(), ordinals())
def test_add_associative(a, b, c):
    assert add(add(a, b), c) == add(a, add(b, c))


@given(ordinals(), ordinals())
def test_add_monotone_right_and_left_subtract(a, b):
    s = add(a, b)
    assert s >= a and s >= b
    assert left_subtract(a, s) == b


@given(ordinals(), ordinals())
def test_left_subtract_round_trip(a, b):
    lo, hi = sorted([a, b])
    assert add(lo, left_subtract(lo, hi)) == hi


def test_left_subtract_underflow():
    with pytest.raises(SubtractUnderflow):
        left_subtract(OMEGA, ONE)


def test_absorption():
    assert add(ONE, OMEGA) == OMEGA
    assert add(OMEGA, ONE) != OMEGA
    assert add(OMEGA, omega_pow(Ordinal.nat(2))) == omega_pow(Ordinal.nat(2))


@given(ordinals(), st.integers(1, 5))
def test_mul_nat_is_repeated_addition(a, n):
    acc = ZERO
    for _ in range(n):
        acc = add(acc, a)
    assert mul_nat(a, n) == acc


@given(small_ordinals, ordinals())
def test_omega_div_inverts_omega_mul(beta, xi):
    assert omega_div(beta, omega_mul(beta, xi)) == xi


# -- successor / limit structure -------------------------------------------------

@given(ordinals())
def test_successor_classification(a):
    kind, p = classify(succ(a))
    assert kind is Kind.SUCCESSOR and p == a
    assert pred(succ(a)) == a


@given(ordinals(), st.integers(1, 6))
def test_fund_seq_increasing_below(a, n):
    if not is_limit(a):
        with pytest.raises(OrdinalError):
            fund_seq(a, n)
        return
    x, y = fund_seq(a, n), fund_seq(a, n + 1)
    assert x < y < a


@given(ordinals(), st.integers(0, 10 ** 6))
def test_fund_seq_cofinal(a, seed):
    if not is_limit(a):
        return
    b = random_below(random.Random(seed), a)
    assert any(fund_seq(a, n) > b for n in range(1, 60))


def test_fund_seq_examples():
    w2 = omega_pow(Ordinal.nat(2))
    assert fund_seq(OMEGA, 3) == Ordinal.nat(3)
    assert fund_seq(w2, 2) == mul_nat(OMEGA, 2)
    assert fund_seq(omega_pow(OMEGA), 3) == omega_pow(Ordinal.nat(3))
    assert fund_seq(add(OMEGA, OMEGA), 4) == add(OMEGA, Ordinal.nat(4))


# -- gamma numbers -----------------------------------------------------------

@given(ordinals())
def test_gamma_is_least_power_above(a):
    g = gamma_of(a)
    assert is_gamma(g) and g >= a
    assert gamma_of(g) == g
    if a and not is_gamma(a):
        # the previous power of omega is below a
        assert omega_pow(a.leading_exponent) < a


@given(ordinals(), ordinals())
def test_gamma_monotone(a, b):
    lo, hi = sorted([a, b])
    assert gamma_of(lo) <= gamma_of(hi)


def test_gamma_examples():
    assert gamma_of(ZERO) == ZERO
    assert gamma_of(ONE) == ONE
    assert gamma_of(Ordinal.nat(3)) == OMEGA
    assert gamma_of(succ(OMEGA)) == omega_pow(Ordinal.nat(2))
    assert gamma_of(INF) is INF


# -- text syntax ----------------------------------------------------------------

@given(ordinals(3))
def test_print_parse_round_trip(a):
    assert parse_ordinal(to_text(a)) == a
    assert to_text(parse_ordinal(to_text(a))) == to_text(a)


@pytest.mark.parametrize("text,value", [
    ("0", ZERO), ("5", Ordinal.nat(5)), ("w", OMEGA), ("w^(1)*1", OMEGA),
    ("w^(2)*3+w^(1)*1+5", make([(2, 3), (1, 1), (0, 5)])),
    ("w^(w)", omega_pow(OMEGA)), ("w*0+2", Ordinal.nat(2)),
])
def test_parse_examples(text, value):
    assert parse_ordinal(text) == value


@pytest.mark.parametrize("text,col", [("w^(", 4), ("w+", 3), ("x", 1), ("w^(2)*", 7), ("1 2", 2)])
def test_parse_errors_have_positions(text, col):
    with pytest.raises(OrdinalSyntaxError) as e:
        parse_ordinal(text)
    assert e.value.pos + 1 == col


def test_extended_order():
    w1 = Opaque("w1", 10)
    assert OMEGA < w1 < INF
    assert parse_ext_ordinal("inf") is INF
    assert ext_text(INF) == "inf"
