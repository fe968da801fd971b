"""Clopen regions of canonical trees.

A region is a selector mirroring the tree: :data:`WHOLE`, :data:`NONE`,
:class:`SumSelect`, :class:`OnePointSelect`, :class:`LeafSelect` and
:class:`CantorSelect`.  A one-point selector lists finitely many copy
overrides; unlisted copies follow ``include_infinity``, which is what makes
every selector clopen.  All operations take the tree the region lives on and
return normalized selectors, so set equality is structural equality.
"""
from __future__ import annotations

from dataclasses import dataclass

from functools import lru_cache

from .ordinal import cache_hash
from .cardinal import CONTINUUM, ZERO_CARD, Cardinal, Finite, card_sum
from .ordinal import ZERO, Infinity, succ
from .space import (
    AtInfinity, Cantor, CantorPrefix, CopyIndex, EmptySpace, FiniteDiscrete,
    LeafIndex, OnePoint, Ramp, Space, Sum, SumBranch, Unit, _le, derived_card,
    height, tree_member,
)


class InvalidRegion(ValueError):
    pass


class Region:
    pass


@dataclass(frozen=True)
class Whole(Region):
    def __repr__(self):
        return "WHOLE"


@dataclass(frozen=True)
class Nothing(Region):
    def __repr__(self):
        return "NONE"


WHOLE = Whole()
NONE = Nothing()


@cache_hash
@dataclass(frozen=True)
class SumSelect(Region):
    parts: tuple


@cache_hash
@dataclass(frozen=True)
class OnePointSelect(Region):
    include_infinity: bool
    overrides: tuple = ()  # sorted ((copy, region), ...)


@cache_hash
@dataclass(frozen=True)
class LeafSelect(Region):
    leaves: frozenset


@cache_hash
@dataclass(frozen=True)
class CantorSelect(Region):
    """Union of the depth-``depth`` cylinders named in ``words``."""

    depth: int
    words: frozenset


def cylinder(prefix) -> CantorSelect:
    prefix = tuple(int(b) for b in prefix)
    return CantorSelect(len(prefix), frozenset([prefix]))


def inf_rank(t: OnePoint):
    """Largest ``beta`` with the point at infinity in ``t^(beta)``."""
    if isinstance(t.family, Ramp):
        return t.family.limit_alpha
    return height(t.family.space)


def in_tree_derived(t: Space, q, beta) -> bool:
    """Membership of a tree point in ``t^(beta)``."""
    step, rest = q[0], q[1:]
    if isinstance(t, FiniteDiscrete):
        return beta == ZERO
    if isinstance(t, (Cantor, Unit)):
        return True
    if isinstance(t, Sum):
        return in_tree_derived(t.parts[step.i], rest, beta)
    if isinstance(t, OnePoint):
        if isinstance(step, AtInfinity):
            return _le(beta, inf_rank(t))
        return in_tree_derived(tree_member(t, step.n), rest, beta)
    raise InvalidRegion(f"no tree points on {t}")


# ---------------------------------------------------------------------------
# normalization

def _expand(t: Space, r: Region) -> Region:
    full = isinstance(r, Whole)
    if not isinstance(r, (Whole, Nothing)):
        return r
    if isinstance(t, FiniteDiscrete):
        return LeafSelect(frozenset(range(t.n)) if full else frozenset())
    if isinstance(t, Sum):
        return SumSelect((r,) * len(t.parts))
    if isinstance(t, OnePoint):
        return OnePointSelect(full, ())
    if isinstance(t, Cantor):
        return CantorSelect(0, frozenset([()]) if full else frozenset())
    return r


def _reduce_cantor(depth, words):
    words = frozenset(words)
    while depth > 0 and words:
        if any(w[:-1] + (1 - w[-1],) not in words for w in words):
            break
        words = frozenset(w[:-1] for w in words)
        depth -= 1
    if not words:
        return NONE
    if depth == 0:
        return WHOLE
    return CantorSelect(depth, words)


@lru_cache(maxsize=1 << 16)
def normalize(t: Space, r: Region) -> Region:
    if isinstance(r, (Whole, Nothing)):
        return r
    if isinstance(t, FiniteDiscrete) and isinstance(r, LeafSelect):
        if not all(0 <= i < t.n for i in r.leaves):
            raise InvalidRegion(f"leaf out of range in {r}")
        if not r.leaves:
            return NONE
        return WHOLE if len(r.leaves) == t.n else r
    if isinstance(t, Sum) and isinstance(r, SumSelect):
        if len(r.parts) != len(t.parts):
            raise InvalidRegion("sum selector arity mismatch")
        parts = tuple(normalize(p, s) for p, s in zip(t.parts, r.parts))
        if all(isinstance(s, Whole) for s in parts):
            return WHOLE
        if all(isinstance(s, Nothing) for s in parts):
            return NONE
        return SumSelect(parts)
    if isinstance(t, OnePoint) and isinstance(r, OnePointSelect):
        default = WHOLE if r.include_infinity else NONE
        kept = {}
        for n, s in r.overrides:
            if n < 1:
                raise InvalidRegion(f"copy index {n} < 1")
            s = normalize(tree_member(t, n), s)
            if s != default:
                kept[n] = s
        if not kept:
            return default
        return OnePointSelect(r.include_infinity, tuple(sorted(kept.items())))
    if isinstance(t, Cantor) and isinstance(r, CantorSelect):
        if any(len(w) != r.depth or not set(w) <= {0, 1} for w in r.words):
            raise InvalidRegion("malformed cantor selector")
        return _reduce_cantor(r.depth, r.words)
    raise InvalidRegion(f"{r!r} does not fit {t}")


def _refine(sel: CantorSelect, depth: int) -> set:
    out = set()
    for w in sel.words:
        k = depth - sel.depth
        for i in range(2 ** k):
            out.add(w + tuple((i >> (k - 1 - j)) & 1 for j in range(k)))
    return out


def _combine(t, a, b, op):
    if isinstance(a, (Whole, Nothing)) and isinstance(b, (Whole, Nothing)):
        return WHOLE if op(isinstance(a, Whole), isinstance(b, Whole)) else NONE
    if isinstance(t, (Unit, EmptySpace)):
        raise InvalidRegion(f"only whole/empty selectors fit {t}")
    a, b = _expand(t, a), _expand(t, b)
    if isinstance(t, FiniteDiscrete):
        out = frozenset(i for i in range(t.n) if op(i in a.leaves, i in b.leaves))
        return normalize(t, LeafSelect(out))
    if isinstance(t, Sum):
        return normalize(t, SumSelect(tuple(
            _combine(p, x, y, op) for p, x, y in zip(t.parts, a.parts, b.parts))))
    if isinstance(t, OnePoint):
        da = WHOLE if a.include_infinity else NONE
        db = WHOLE if b.include_infinity else NONE
        oa, ob = dict(a.overrides), dict(b.overrides)
        over = tuple((n, _combine(tree_member(t, n), oa.get(n, da), ob.get(n, db), op))
                     for n in sorted(set(oa) | set(ob)))
        return normalize(t, OnePointSelect(op(a.include_infinity, b.include_infinity), over))
    if isinstance(t, Cantor):
        d = max(a.depth, b.depth)
        wa, wb = _refine(a, d), _refine(b, d)
        words = [w for w in wa | wb if op(w in wa, w in wb)]
        return _reduce_cantor(d, words)
    raise InvalidRegion(f"no selectors on {t}")


def intersect(t, a, b):
    return _combine(t, a, b, lambda x, y: x and y)


def union(t, a, b):
    return _combine(t, a, b, lambda x, y: x or y)


def difference(t, a, b):
    return _combine(t, a, b, lambda x, y: x and not y)


def complement(t, r):
    return difference(t, WHOLE, r)


def is_empty(t, r) -> bool:
    return isinstance(normalize(t, r), Nothing)


def contains(t, outer, inner) -> bool:
    return is_empty(t, difference(t, inner, outer))


def disjoint(t, a, b) -> bool:
    return is_empty(t, intersect(t, a, b))


def member(t: Space, r: Region, q) -> bool:
    """Whether the tree point ``q`` lies in ``r``."""
    if isinstance(r, Whole):
        return True
    if isinstance(r, Nothing):
        return False
    step, rest = q[0], q[1:]
    if isinstance(r, SumSelect):
        return member(t.parts[step.i], r.parts[step.i], rest)
    if isinstance(r, OnePointSelect):
        if isinstance(step, AtInfinity):
            return r.include_infinity
        sub = dict(r.overrides).get(step.n, WHOLE if r.include_infinity else NONE)
        return member(tree_member(t, step.n), sub, rest)
    if isinstance(r, LeafSelect):
        return step.i in r.leaves
    if isinstance(r, CantorSelect):
        bits = (step.bits + (0,) * r.depth)[:r.depth]
        return bits in r.words
    raise InvalidRegion(repr(r))


# ---------------------------------------------------------------------------
# ranks inside regions

def region_derived_card(t: Space, r: Region, beta) -> Cardinal:
    """Cardinality of ``r^(beta)`` (``r`` clopen, so ``r^(beta) = r & t^(beta)``)."""
    if isinstance(r, Nothing):
        return ZERO_CARD
    if isinstance(r, Whole):
        return derived_card(t, beta)
    if isinstance(r, SumSelect):
        out = ZERO_CARD
        for p, s in zip(t.parts, r.parts):
            out = card_sum(out, region_derived_card(p, s, beta))
        return out
    if isinstance(r, OnePointSelect):
        if r.include_infinity:
            rank = inf_rank(t)
            if not _le(beta, rank):
                return ZERO_CARD
            if not isinstance(beta, Infinity) and not _le(succ(beta), rank):
                return Finite(1)
            return derived_card(t, beta)
        out = ZERO_CARD
        for n, s in r.overrides:
            out = card_sum(out, region_derived_card(tree_member(t, n), s, beta))
        return out
    if isinstance(r, LeafSelect):
        return Finite(len(r.leaves)) if beta == ZERO else ZERO_CARD
    if isinstance(r, CantorSelect):
        return CONTINUUM if r.words else ZERO_CARD
    raise InvalidRegion(repr(r))


def leftmost(t: Space, r: Region, beta):
    """Leftmost tree point of ``r`` lying in ``t^(beta)``, or ``None``.
    At a one-point node the point at infinity is preferred; when it is too
    low, no point of its copies qualifies either."""
    r = _expand(t, r)
    if isinstance(r, Nothing):
        return None
    if isinstance(t, FiniteDiscrete):
        if beta != ZERO or not r.leaves:
            return None
        return (LeafIndex(min(r.leaves)),)
    if isinstance(t, Cantor):
        return (CantorPrefix(min(r.words)),) if r.words else None
    if isinstance(t, Sum):
        for i, (p, s) in enumerate(zip(t.parts, r.parts)):
            q = leftmost(p, s, beta)
            if q is not None:
                return (SumBranch(i),) + q
        return None
    if isinstance(t, OnePoint):
        if r.include_infinity:
            return (AtInfinity(),) if _le(beta, inf_rank(t)) else None
        for n, s in r.overrides:
            q = leftmost(tree_member(t, n), s, beta)
            if q is not None:
                return (CopyIndex(n),) + q
        return None
    if isinstance(t, Unit):
        raise InvalidRegion("unit interval has no clopen splitting")
    raise InvalidRegion(repr(r))


def neighbourhood(t: Space, r: Region, q) -> Region:
    """Basic clopen neighbourhood of ``q`` inside ``r`` in which ``q`` has the
    largest rank."""
    r = _expand(t, r)
    step, rest = q[0], q[1:]
    if isinstance(t, FiniteDiscrete):
        out = LeafSelect(frozenset([step.i]))
    elif isinstance(t, Cantor):
        word = (step.bits + (0,) * r.depth)[:r.depth]
        out = CantorSelect(r.depth, frozenset([word]))
    elif isinstance(t, Sum):
        parts = [NONE] * len(t.parts)
        parts[step.i] = neighbourhood(t.parts[step.i], r.parts[step.i], rest)
        out = SumSelect(tuple(parts))
    elif isinstance(t, OnePoint):
        if isinstance(step, AtInfinity):
            j = 1 + max((n for n, _ in r.overrides), default=0)
            out = OnePointSelect(True, tuple((n, NONE) for n in range(1, j)))
        else:
            sub = dict(r.overrides).get(step.n, WHOLE if r.include_infinity else NONE)
            out = OnePointSelect(False, (
                (step.n, neighbourhood(tree_member(t, step.n), sub, rest)),))
    else:
        raise InvalidRegion(f"no neighbourhoods on {t}")
    return normalize(t, out)


def at_path(t: Space, path, inner: Region) -> Region:
    """Region that is ``inner`` at the subtree reached by ``path`` and empty
    elsewhere."""
    if not path:
        return normalize(t, inner)
    step, rest = path[0], path[1:]
    if isinstance(t, Sum):
        parts = [NONE] * len(t.parts)
        parts[step.i] = at_path(t.parts[step.i], rest, inner)
        return normalize(t, SumSelect(tuple(parts)))
    if isinstance(t, OnePoint) and isinstance(step, CopyIndex):
        return normalize(t, OnePointSelect(False, (
            (step.n, at_path(tree_member(t, step.n), rest, inner)),)))
    raise InvalidRegion(f"path step {step!r} does not fit {t}")


def subtree(t: Space, path) -> Space:
    for step in path:
        if isinstance(step, SumBranch):
            t = t.parts[step.i]
        elif isinstance(step, CopyIndex):
            t = tree_member(t, step.n)
        else:
            raise InvalidRegion(f"{step!r} does not descend")
    return t


def restrict(t: Space, r: Region, path) -> Region:
    """The part of ``r`` inside the subtree at ``path``."""
    for step in path:
        r = _expand(t, r)
        if isinstance(r, Nothing):
            return NONE
        if isinstance(step, SumBranch):
            t, r = t.parts[step.i], r.parts[step.i]
        else:
            r = dict(r.overrides).get(step.n, WHOLE if r.include_infinity else NONE)
            t = tree_member(t, step.n)
    return r
