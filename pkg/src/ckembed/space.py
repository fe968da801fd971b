"""Grammar of representable compact spaces and their Cantor-Bendixson invariants.

Constructive atoms are finite discrete spaces, ordinal intervals
``[1, w^a * m]``, the Cantor set and the unit interval; they combine by
finite topological sums and one-point compactifications of countably many
copies (``op``) or of the ramp family ``[1, w^(b_n)]`` along the canonical
fundamental sequence of a limit ordinal (``opramp``).  Symbolic atoms carry a
declared cardinal profile and are only used by the decision procedures.

Points are tuples of steps (see :class:`SumBranch` and friends).  Raw points
address an expression as written; *tree* points address its
:func:`canonical_tree`, where ordinal intervals have been unfolded into
one-point compactifications.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .ordinal import cache_hash
from .cardinal import (
    ALEPH0, ALEPH1, CONTINUUM, TWO_TO_CONTINUUM, ZERO_CARD, Cardinal, Finite,
    card_max, card_mul, card_sum,
)
from .ordinal import (
    INF, ONE, ZERO, Infinity, Kind, Opaque, Ordinal, add, classify, fund_seq,
    is_limit, left_subtract, mul_nat, omega_div, omega_mul, omega_pow, pred,
    succ, to_text,
)


class SpaceError(ValueError):
    pass


class NotScattered(SpaceError):
    pass


class NotCountableCompact(SpaceError):
    pass


class NotConstructive(SpaceError):
    pass


class InvalidPoint(SpaceError):
    pass


# ---------------------------------------------------------------------------
# terms

class Space:
    """Base class of space terms; all subclasses are immutable."""

    def __str__(self):
        return to_text_space(self)


@dataclass(frozen=True)
class EmptySpace(Space):
    pass


EMPTY = EmptySpace()


@dataclass(frozen=True)
class FiniteDiscrete(Space):
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise SpaceError("fin(n) needs n >= 1; use EMPTY for the empty space")


@cache_hash
@dataclass(frozen=True)
class Interval(Space):
    """The ordinal interval ``[1, w^alpha * m]``."""

    alpha: Ordinal
    m: int = 1

    def __post_init__(self):
        if self.m < 1:
            raise SpaceError("interval multiplicity must be >= 1")


@dataclass(frozen=True)
class Cantor(Space):
    pass


@dataclass(frozen=True)
class Unit(Space):
    pass


@cache_hash
@dataclass(frozen=True)
class Sum(Space):
    parts: tuple

    def __post_init__(self):
        if not self.parts:
            raise SpaceError("sum needs at least one part")
        object.__setattr__(self, "parts", tuple(self.parts))


@cache_hash
@dataclass(frozen=True)
class Uniform:
    space: Space


@cache_hash
@dataclass(frozen=True)
class Ramp:
    limit_alpha: Ordinal

    def __post_init__(self):
        if not is_limit(self.limit_alpha):
            raise SpaceError(f"opramp needs a limit ordinal, got {self.limit_alpha}")


@cache_hash
@dataclass(frozen=True)
class OnePoint(Space):
    index: Cardinal
    family: Union[Uniform, Ramp]

    def __post_init__(self):
        if self.index.is_finite:
            raise SpaceError("finite one-point families are written as sums")


@dataclass(frozen=True)
class Profile:
    metrizable: bool
    zero_dimensional: bool
    height: object
    derived: tuple  # ((order, Cardinal), ...) sorted by order
    cellularity: tuple
    kernel_card: Cardinal
    kernel_cellularity: Cardinal
    note: str = ""

    @property
    def scattered(self) -> bool:
        return not isinstance(self.height, Infinity)


def _lookup(table, order):
    if isinstance(order, Infinity):
        return None
    value = ZERO_CARD
    for b, card in table:
        if b <= order:
            value = card
    return value


W1 = Opaque("w1", 10)
W1_SUCC = Opaque("w1+1", 11)
TWO_C = Opaque("2^c", 20)
TWO_C_SUCC = Opaque("2^c+1", 21)

BUILTIN_ATOMS = {
    "[1,omega1]": Profile(
        metrizable=False, zero_dimensional=True, height=W1_SUCC,
        derived=((ZERO, ALEPH1), (W1, Finite(1)), (W1_SUCC, ZERO_CARD)),
        cellularity=((ZERO, ALEPH1), (W1, Finite(1)), (W1_SUCC, ZERO_CARD)),
        kernel_card=ZERO_CARD, kernel_cellularity=ZERO_CARD),
    "bN_minus_N": Profile(
        metrizable=False, zero_dimensional=True, height=INF,
        derived=((ZERO, TWO_TO_CONTINUUM),), cellularity=((ZERO, CONTINUUM),),
        kernel_card=TWO_TO_CONTINUUM, kernel_cellularity=CONTINUUM),
    "cube_omega1": Profile(
        metrizable=False, zero_dimensional=False, height=INF,
        derived=((ZERO, TWO_TO_CONTINUUM),), cellularity=((ZERO, ALEPH0),),
        kernel_card=TWO_TO_CONTINUUM, kernel_cellularity=ALEPH0,
        note="true cardinality is 2^aleph1, stored as 2^c on this scale"),
    "[1,2^c]": Profile(
        metrizable=False, zero_dimensional=True, height=TWO_C_SUCC,
        derived=((ZERO, TWO_TO_CONTINUUM), (TWO_C, Finite(1)), (TWO_C_SUCC, ZERO_CARD)),
        cellularity=((ZERO, TWO_TO_CONTINUUM), (TWO_C, Finite(1)), (TWO_C_SUCC, ZERO_CARD)),
        kernel_card=ZERO_CARD, kernel_cellularity=ZERO_CARD),
}


def _shift_order(b, shift):
    """Order ``g`` such that ``shift + g`` is the breakpoint ``b`` (0 if ``b``
    lies below ``shift``)."""
    if isinstance(shift, Ordinal):
        if isinstance(b, Ordinal):
            return left_subtract(shift, b) if shift <= b else ZERO
        return b
    # opaque shift
    if not isinstance(b, Opaque) or b <= shift:
        return ZERO
    return ONE if b.label == shift.label + "+1" else b


@cache_hash
@dataclass(frozen=True)
class SymbolicAtom(Space):
    name: str
    shift: object = ZERO

    def __post_init__(self):
        if self.name not in BUILTIN_ATOMS:
            raise SpaceError(f"unknown symbolic atom {self.name!r}")
        if isinstance(self.shift, int):
            object.__setattr__(self, "shift", Ordinal.nat(self.shift))

    @property
    def profile(self) -> Profile:
        base = BUILTIN_ATOMS[self.name]
        if self.shift == ZERO:
            return base
        if isinstance(self.shift, Infinity):
            kern = ((ZERO, base.kernel_card),)
            return Profile(base.metrizable, base.zero_dimensional,
                           INF if not base.kernel_card.is_zero else ZERO,
                           kern, ((ZERO, base.kernel_cellularity),),
                           base.kernel_card, base.kernel_cellularity, base.note)

        def shifted(table):
            out = {}
            for b, card in table:
                out[_shift_order(b, self.shift)] = card
            return tuple(sorted(out.items(), key=lambda kv: _order_key(kv[0])))

        h = base.height
        if isinstance(h, (Ordinal, Opaque)):
            h = _shift_order(h, self.shift)
        return Profile(base.metrizable, base.zero_dimensional, h,
                       shifted(base.derived), shifted(base.cellularity),
                       base.kernel_card, base.kernel_cellularity, base.note)


def _order_key(o):
    if isinstance(o, Ordinal):
        return (0, o)
    if isinstance(o, Opaque):
        return (1, o.key)
    return (2, 0)


# ---------------------------------------------------------------------------
# points

@dataclass(frozen=True)
class SumBranch:
    i: int


@dataclass(frozen=True)
class CopyIndex:
    n: int


@dataclass(frozen=True)
class AtInfinity:
    pass


@dataclass(frozen=True)
class LeafIndex:
    i: int


@dataclass(frozen=True)
class OrdinalPoint:
    o: Ordinal


@dataclass(frozen=True)
class CantorPrefix:
    """The Cantor point ``bits`` followed by zeros."""

    bits: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "bits", tuple(int(b) for b in self.bits))


@dataclass(frozen=True)
class RealPoint:
    x: Fraction


Point = tuple


# ---------------------------------------------------------------------------
# structural predicates

def members(node: OnePoint, n: int) -> Space:
    """The ``n``-th copy (``n >= 1``) of a one-point compactification."""
    if n < 1:
        raise InvalidPoint(f"copy index {n} < 1")
    fam = node.family
    if isinstance(fam, Uniform):
        return fam.space
    return Interval(fund_seq(fam.limit_alpha, n), 1)


def tree_member(node: OnePoint, n: int) -> Space:
    return canonical_tree(members(node, n))


def is_constructive(s: Space) -> bool:
    if isinstance(s, SymbolicAtom):
        return False
    if isinstance(s, Sum):
        return all(is_constructive(p) for p in s.parts)
    if isinstance(s, OnePoint):
        return s.index == ALEPH0 and (
            isinstance(s.family, Ramp) or is_constructive(s.family.space))
    return True


def metrizable(s: Space) -> bool:
    if isinstance(s, SymbolicAtom):
        return s.profile.metrizable
    if isinstance(s, Sum):
        return all(metrizable(p) for p in s.parts)
    if isinstance(s, OnePoint):
        return s.index.countable and (
            isinstance(s.family, Ramp) or metrizable(s.family.space))
    return True


def zero_dimensional(s: Space) -> bool:
    if isinstance(s, Unit):
        return False
    if isinstance(s, SymbolicAtom):
        return s.profile.zero_dimensional
    if isinstance(s, Sum):
        return all(zero_dimensional(p) for p in s.parts)
    if isinstance(s, OnePoint) and isinstance(s.family, Uniform):
        return zero_dimensional(s.family.space)
    return True


def countable(s: Space) -> bool:
    return card_of(s).countable


def scattered(s: Space) -> bool:
    return not isinstance(height(s), Infinity)


# ---------------------------------------------------------------------------
# heights, derivatives, cardinalities

@lru_cache(maxsize=None)
def height(s: Space):
    if isinstance(s, EmptySpace):
        return ZERO
    if isinstance(s, FiniteDiscrete):
        return ONE
    if isinstance(s, Interval):
        return succ(s.alpha)
    if isinstance(s, (Cantor, Unit)):
        return INF
    if isinstance(s, Sum):
        return max((height(p) for p in s.parts), key=_order_key)
    if isinstance(s, OnePoint):
        if isinstance(s.family, Ramp):
            return succ(s.family.limit_alpha)
        h = height(s.family.space)
        return succ(h) if isinstance(h, Ordinal) else h
    if isinstance(s, SymbolicAtom):
        return s.profile.height
    raise TypeError(s)


def _le(a, b) -> bool:
    return _order_key(a) <= _order_key(b)


def _sum_of(parts) -> Space:
    parts = [p for p in parts if not isinstance(p, EmptySpace)]
    return Sum(tuple(parts)) if parts else EMPTY


@lru_cache(maxsize=None)
def derived(s: Space, beta) -> Space:
    """The Cantor-Bendixson derivative of order ``beta`` (``INF`` gives the
    perfect kernel); :data:`EMPTY` when it is empty."""
    if isinstance(beta, Infinity):
        return perfect_kernel(s)
    if beta == ZERO:
        return s
    if isinstance(s, EmptySpace):
        return EMPTY
    if isinstance(s, FiniteDiscrete):
        return EMPTY
    if isinstance(s, Interval):
        if isinstance(beta, Ordinal) and beta <= s.alpha:
            g = left_subtract(beta, s.alpha)
            return FiniteDiscrete(s.m) if g == ZERO else Interval(g, s.m)
        return EMPTY
    if isinstance(s, (Cantor, Unit)):
        return s
    if isinstance(s, Sum):
        return _sum_of(derived(p, beta) for p in s.parts)
    if isinstance(s, OnePoint):
        if isinstance(s.family, Ramp):
            return derived(Interval(s.family.limit_alpha, 1), beta)
        lder = derived(s.family.space, beta)
        if not isinstance(lder, EmptySpace):
            return OnePoint(s.index, Uniform(lder))
        if _le(beta, height(s.family.space)):
            return FiniteDiscrete(1)
        return EMPTY
    if isinstance(s, SymbolicAtom):
        if not isinstance(beta, Ordinal) and not isinstance(beta, Opaque):
            raise TypeError(beta)
        total = _add_ext(s.shift, beta)
        atom = SymbolicAtom(s.name, total)
        if atom.profile.derived[0][1].is_zero or (
                isinstance(atom.profile.height, Ordinal) and atom.profile.height == ZERO):
            return EMPTY
        return atom
    raise TypeError(s)


def _add_ext(a, b):
    if isinstance(a, Ordinal) and isinstance(b, Ordinal):
        return add(a, b)
    if isinstance(b, Opaque):
        return b
    return a


@lru_cache(maxsize=None)
def perfect_kernel(s: Space) -> Space:
    if isinstance(s, (Cantor, Unit)):
        return s
    if isinstance(s, (EmptySpace, FiniteDiscrete, Interval)):
        return EMPTY
    if isinstance(s, Sum):
        return _sum_of(perfect_kernel(p) for p in s.parts)
    if isinstance(s, OnePoint):
        if isinstance(s.family, Ramp):
            return EMPTY
        k = perfect_kernel(s.family.space)
        return EMPTY if isinstance(k, EmptySpace) else OnePoint(s.index, Uniform(k))
    if isinstance(s, SymbolicAtom):
        if s.profile.scattered or s.profile.kernel_card.is_zero:
            return EMPTY
        return SymbolicAtom(s.name, INF)
    raise TypeError(s)


@lru_cache(maxsize=None)
def derived_card(s: Space, beta) -> Cardinal:
    if isinstance(s, EmptySpace):
        return ZERO_CARD
    if isinstance(s, FiniteDiscrete):
        return Finite(s.n) if beta == ZERO else ZERO_CARD
    if isinstance(s, Interval):
        if not isinstance(beta, Ordinal) or beta > s.alpha:
            return ZERO_CARD
        return Finite(s.m) if beta == s.alpha else ALEPH0
    if isinstance(s, (Cantor, Unit)):
        return CONTINUUM
    if isinstance(s, Sum):
        out = ZERO_CARD
        for p in s.parts:
            out = card_sum(out, derived_card(p, beta))
        return out
    if isinstance(s, OnePoint):
        if isinstance(s.family, Ramp):
            return derived_card(Interval(s.family.limit_alpha, 1), beta)
        inner = derived_card(s.family.space, beta)
        if not inner.is_zero:
            return card_sum(card_mul(s.index, inner), Finite(1))
        return Finite(1) if _le(beta, height(s.family.space)) else ZERO_CARD
    if isinstance(s, SymbolicAtom):
        p = s.profile
        if isinstance(beta, Infinity):
            return p.kernel_card
        if not p.scattered:
            return _lookup(p.derived, beta)
        return _lookup(p.derived, beta)
    raise TypeError(s)


def card_of(s: Space) -> Cardinal:
    return derived_card(s, ZERO)


def top_order(s: Space):
    """``ht(S) - 1`` for a scattered nonempty space."""
    h = height(s)
    if isinstance(h, Infinity):
        raise NotScattered(str(s))
    if isinstance(h, Opaque):
        for b, _ in s.profile.derived:
            if isinstance(b, Opaque) and b.label + "+1" == h.label:
                return b
        raise SpaceError(f"no top order recorded for {s}")
    if h == ZERO:
        raise SpaceError("empty space has no top derivative")
    return pred(h)


def top_card(s: Space) -> Cardinal:
    return derived_card(s, top_order(s))


def ms_normal_form(s: Space) -> tuple:
    """``(alpha, m)`` with ``s`` homeomorphic to ``[1, w^alpha * m]``."""
    if not is_constructive(s) or isinstance(s, EmptySpace) or not countable(s):
        raise NotCountableCompact(str(s))
    alpha = top_order(s)
    m = top_card(s)
    assert m.is_finite and m.n >= 1, m
    return alpha, m.n


@lru_cache(maxsize=None)
def rel_cellularity(s: Space, order) -> Cardinal:
    """Relative cellularity ``c(S^(order), S)``."""
    if isinstance(s, EmptySpace):
        return ZERO_CARD
    if isinstance(s, FiniteDiscrete):
        return Finite(s.n) if order == ZERO else ZERO_CARD
    if isinstance(s, Interval):
        if not isinstance(order, Ordinal) or order > s.alpha:
            return ZERO_CARD
        return Finite(s.m) if order == s.alpha else ALEPH0
    if isinstance(s, (Cantor, Unit)):
        return ALEPH0
    if isinstance(s, Sum):
        out = ZERO_CARD
        for p in s.parts:
            out = card_sum(out, rel_cellularity(p, order))
        return out
    if isinstance(s, OnePoint):
        if isinstance(s.family, Ramp):
            return rel_cellularity(Interval(s.family.limit_alpha, 1), order)
        L = s.family.space
        if isinstance(derived(s, order), EmptySpace):
            return ZERO_CARD
        if isinstance(derived(L, order), EmptySpace):
            return Finite(1)
        return card_max(s.index, rel_cellularity(L, order))
    if isinstance(s, SymbolicAtom):
        p = s.profile
        if isinstance(order, Infinity):
            return p.kernel_cellularity
        return _lookup(p.cellularity, order)
    raise TypeError(s)


def breakpoints(s: Space) -> set:
    """Orders at which the derived-cardinality or relative-cellularity
    profile of ``s`` may change; both are constant between consecutive
    breakpoints."""
    if isinstance(s, (EmptySpace, Cantor, Unit)):
        return {ZERO}
    if isinstance(s, FiniteDiscrete):
        return {ZERO, ONE}
    if isinstance(s, Interval):
        return {ZERO, s.alpha, succ(s.alpha)}
    if isinstance(s, Sum):
        out = set()
        for p in s.parts:
            out |= breakpoints(p)
        return out
    if isinstance(s, OnePoint):
        if isinstance(s.family, Ramp):
            a = s.family.limit_alpha
            return {ZERO, a, succ(a)}
        L = s.family.space
        out = set(breakpoints(L))
        h = height(L)
        if isinstance(h, Ordinal):
            out |= {h, succ(h)}
        return out
    if isinstance(s, SymbolicAtom):
        p = s.profile
        return {b for b, _ in p.derived} | {b for b, _ in p.cellularity}
    raise TypeError(s)


# ---------------------------------------------------------------------------
# points: validity and the derivative membership oracle

def interval_top(alpha: Ordinal, m: int) -> Ordinal:
    return mul_nat(omega_pow(alpha), m)


def is_valid_point(s: Space, p: Point, tree: bool = False) -> bool:
    try:
        _check_point(s, tuple(p), tree)
    except InvalidPoint:
        return False
    return True


def _check_point(s, p, tree):
    if not p:
        raise InvalidPoint("empty path")
    step, rest = p[0], p[1:]
    if isinstance(s, FiniteDiscrete):
        if isinstance(step, LeafIndex) and 0 <= step.i < s.n and not rest:
            return
    elif isinstance(s, Interval):
        if isinstance(step, OrdinalPoint) and not rest and \
                ONE <= step.o <= interval_top(s.alpha, s.m):
            return
    elif isinstance(s, Cantor):
        if isinstance(step, CantorPrefix) and not rest and set(step.bits) <= {0, 1}:
            return
    elif isinstance(s, Unit):
        if isinstance(step, RealPoint) and not rest and 0 <= step.x <= 1:
            return
    elif isinstance(s, Sum):
        if isinstance(step, SumBranch) and 0 <= step.i < len(s.parts):
            return _check_point(s.parts[step.i], rest, tree)
    elif isinstance(s, OnePoint) and s.index == ALEPH0:
        if isinstance(step, AtInfinity) and not rest:
            return
        if isinstance(step, CopyIndex) and step.n >= 1:
            sub = tree_member(s, step.n) if tree else members(s, step.n)
            return _check_point(sub, rest, tree)
    raise InvalidPoint(f"{p!r} is not a point of {s}")


def in_derived(s: Space, p: Point, beta) -> bool:
    """Whether the raw point ``p`` lies in the derivative of order ``beta``,
    decided along the point's path (independently of :func:`derived`)."""
    p = tuple(p)
    _check_point(s, p, False)
    return _in_derived(s, p, beta)


def _in_derived(s, p, beta):
    step, rest = p[0], p[1:]
    if isinstance(s, FiniteDiscrete):
        return beta == ZERO
    if isinstance(s, Interval):
        # o survives beta derivatives iff w^beta divides o
        return isinstance(beta, Ordinal) and step.o.min_exponent >= beta
    if isinstance(s, (Cantor, Unit)):
        return True
    if isinstance(s, Sum):
        return _in_derived(s.parts[step.i], rest, beta)
    if isinstance(s, OnePoint):
        if isinstance(step, AtInfinity):
            if isinstance(s.family, Ramp):
                return _le(beta, s.family.limit_alpha)
            return _le(beta, height(s.family.space))
        return _in_derived(members(s, step.n), rest, beta)
    raise InvalidPoint(str(s))


def isolated(s: Space, p: Point) -> bool:
    return not in_derived(s, p, ONE)


def derived_point(s: Space, beta, p: Point):
    """Image of the raw point ``p`` under the identification of
    ``S^(beta)`` with the term :func:`derived` returns; ``None`` when ``p``
    has no candidate image.  The result need not be valid in the derived
    term: validity is what the membership oracle is compared against."""
    p = tuple(p)
    if isinstance(beta, Infinity):
        return _kernel_point(s, p)
    if beta == ZERO:
        return p
    step, rest = p[0], p[1:]
    if isinstance(s, (FiniteDiscrete, EmptySpace)):
        return None
    if isinstance(s, Interval):
        if not isinstance(beta, Ordinal) or beta > s.alpha:
            return None
        xi = omega_div(beta, step.o)
        if xi is None:
            return None
        if beta == s.alpha:
            return (LeafIndex(xi.as_int() - 1),) if xi.is_finite else None
        return (OrdinalPoint(xi),)
    if isinstance(s, (Cantor, Unit)):
        return p
    if isinstance(s, Sum):
        new_index = 0
        for i, part in enumerate(s.parts):
            if isinstance(derived(part, beta), EmptySpace):
                if i == step.i:
                    return None
                continue
            if i == step.i:
                sub = derived_point(part, beta, rest)
                return None if sub is None else (SumBranch(new_index),) + sub
            new_index += 1
        return None
    if isinstance(s, OnePoint):
        if isinstance(s.family, Ramp):
            o = from_tree_ordinal_ramp(s.family.limit_alpha, p)
            return derived_point(Interval(s.family.limit_alpha, 1), beta, (OrdinalPoint(o),))
        L = s.family.space
        lder = derived(L, beta)
        if isinstance(step, AtInfinity):
            return p if not isinstance(lder, EmptySpace) else (LeafIndex(0),)
        if isinstance(lder, EmptySpace):
            return None
        sub = derived_point(L, beta, rest)
        return None if sub is None else (step,) + sub
    return None


def _kernel_point(s, p):
    step, rest = p[0], p[1:]
    if isinstance(s, (Cantor, Unit)):
        return p
    if isinstance(s, Sum):
        new_index = 0
        for i, part in enumerate(s.parts):
            if isinstance(perfect_kernel(part), EmptySpace):
                if i == step.i:
                    return None
                continue
            if i == step.i:
                sub = _kernel_point(part, rest)
                return None if sub is None else (SumBranch(new_index),) + sub
            new_index += 1
    if isinstance(s, OnePoint) and isinstance(s.family, Uniform):
        if isinstance(perfect_kernel(s.family.space), EmptySpace):
            return None
        if isinstance(step, AtInfinity):
            return p
        sub = _kernel_point(s.family.space, rest)
        return None if sub is None else (step,) + sub
    return None


# ---------------------------------------------------------------------------
# canonical trees

@lru_cache(maxsize=None)
def canonical_tree(s: Space) -> Space:
    """Rewrite every ordinal interval into nested one-point compactifications:
    ``[1, w^(b+1)]`` becomes ``op(w, [1, w^b])`` and a limit exponent becomes
    the ramp over its fundamental sequence."""
    if isinstance(s, (EmptySpace, FiniteDiscrete, Cantor, Unit)):
        return s
    if isinstance(s, Interval):
        if s.alpha == ZERO:
            return FiniteDiscrete(s.m)
        if s.m > 1:
            one = canonical_tree(Interval(s.alpha, 1))
            return Sum((one,) * s.m)
        kind, p = classify(s.alpha)
        if kind is Kind.SUCCESSOR:
            return OnePoint(ALEPH0, Uniform(canonical_tree(Interval(p, 1))))
        return OnePoint(ALEPH0, Ramp(s.alpha))
    if isinstance(s, Sum):
        return Sum(tuple(canonical_tree(p) for p in s.parts))
    if isinstance(s, OnePoint):
        if s.index != ALEPH0:
            raise NotConstructive(str(s))
        if isinstance(s.family, Ramp):
            return s
        return OnePoint(ALEPH0, Uniform(canonical_tree(s.family.space)))
    raise NotConstructive(str(s))


def split_block(beta: Ordinal, x: Ordinal) -> tuple:
    """``(n, y)`` with ``x = w^beta * (n-1) + y`` and ``1 <= y <= w^beta``."""
    if x.terms and x.terms[0][0] == beta:
        c = x.terms[0][1]
        rest = Ordinal(x.terms[1:])
        return (c, omega_pow(beta)) if rest == ZERO else (c + 1, rest)
    return 1, x


def block_start(beta: Ordinal, n: int) -> Ordinal:
    return mul_nat(omega_pow(beta), n - 1) if n > 1 else ZERO


def _ramp_locate(alpha: Ordinal, x: Ordinal) -> tuple:
    """Copy index and local coordinate of ``x < w^alpha`` in the ramp."""
    n = 1
    while x > omega_pow(fund_seq(alpha, n)):
        n += 1
    if n == 1:
        return 1, x
    return n, left_subtract(omega_pow(fund_seq(alpha, n - 1)), x)


def _ramp_offset(alpha: Ordinal, n: int) -> Ordinal:
    return ZERO if n == 1 else omega_pow(fund_seq(alpha, n - 1))


def interval1_to_tree(alpha: Ordinal, x: Ordinal) -> Point:
    if alpha == ZERO:
        return (LeafIndex(0),)
    if x == omega_pow(alpha):
        return (AtInfinity(),)
    kind, b = classify(alpha)
    if kind is Kind.SUCCESSOR:
        n, y = split_block(b, x)
        return (CopyIndex(n),) + interval1_to_tree(b, y)
    n, y = _ramp_locate(alpha, x)
    return (CopyIndex(n),) + interval1_to_tree(fund_seq(alpha, n), y)


def interval1_from_tree(alpha: Ordinal, q: Point) -> Ordinal:
    step, rest = q[0], q[1:]
    if alpha == ZERO:
        return ONE
    if isinstance(step, AtInfinity):
        return omega_pow(alpha)
    kind, b = classify(alpha)
    if kind is Kind.SUCCESSOR:
        return add(block_start(b, step.n), interval1_from_tree(b, rest))
    return add(_ramp_offset(alpha, step.n),
               interval1_from_tree(fund_seq(alpha, step.n), rest))


def from_tree_ordinal_ramp(alpha: Ordinal, q: Point) -> Ordinal:
    """Raw ramp point ``(CopyIndex n, OrdinalPoint y)`` or ``AtInfinity`` as
    an ordinal of ``[1, w^alpha]``."""
    step = q[0]
    if isinstance(step, AtInfinity):
        return omega_pow(alpha)
    return add(_ramp_offset(alpha, step.n), q[1].o)


def to_tree(s: Space, p: Point) -> Point:
    """Convert a raw point of ``s`` into a point of ``canonical_tree(s)``."""
    p = tuple(p)
    step, rest = p[0], p[1:]
    if isinstance(s, (FiniteDiscrete, Cantor, Unit)):
        return p
    if isinstance(s, Interval):
        o = step.o
        if s.alpha == ZERO:
            return (LeafIndex(o.as_int() - 1),)
        if s.m == 1:
            return interval1_to_tree(s.alpha, o)
        i, x = split_block(s.alpha, o)
        return (SumBranch(i - 1),) + interval1_to_tree(s.alpha, x)
    if isinstance(s, Sum):
        return (step,) + to_tree(s.parts[step.i], rest)
    if isinstance(s, OnePoint):
        if isinstance(step, AtInfinity):
            return p
        return (step,) + to_tree(members(s, step.n), rest)
    raise InvalidPoint(str(s))


def from_tree(s: Space, q: Point) -> Point:
    q = tuple(q)
    step, rest = q[0], q[1:]
    if isinstance(s, (FiniteDiscrete, Cantor, Unit)):
        return q
    if isinstance(s, Interval):
        if s.alpha == ZERO:
            return (OrdinalPoint(Ordinal.nat(step.i + 1)),)
        if s.m == 1:
            return (OrdinalPoint(interval1_from_tree(s.alpha, q)),)
        x = interval1_from_tree(s.alpha, rest)
        return (OrdinalPoint(add(block_start(s.alpha, step.i + 1), x)),)
    if isinstance(s, Sum):
        return (step,) + from_tree(s.parts[step.i], rest)
    if isinstance(s, OnePoint):
        if isinstance(step, AtInfinity):
            return q
        return (step,) + from_tree(members(s, step.n), rest)
    raise InvalidPoint(str(s))


# ---------------------------------------------------------------------------
# text

def _card_token(c: Cardinal) -> str:
    return "w" if c == ALEPH0 else str(c)


def to_text_space(s: Space) -> str:
    if isinstance(s, EmptySpace):
        return "empty"
    if isinstance(s, FiniteDiscrete):
        return f"fin({s.n})"
    if isinstance(s, Interval):
        return f"I({to_text(s.alpha)},{s.m})"
    if isinstance(s, Cantor):
        return "cantor"
    if isinstance(s, Unit):
        return "unit"
    if isinstance(s, Sum):
        return "sum(" + ",".join(to_text_space(p) for p in s.parts) + ")"
    if isinstance(s, OnePoint):
        if isinstance(s.family, Ramp):
            return f"opramp({to_text(s.family.limit_alpha)})"
        return f"op({_card_token(s.index)},{to_text_space(s.family.space)})"
    if isinstance(s, SymbolicAtom):
        if s.shift == ZERO:
            return s.name
        sh = to_text(s.shift) if isinstance(s.shift, Ordinal) else str(s.shift)
        return f"der({s.name},{sh})"
    raise TypeError(s)
