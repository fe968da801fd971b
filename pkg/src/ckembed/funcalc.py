"""Exact continuous functions on canonical trees.

Functions are finite rational data: :class:`LeafVec` on a finite discrete
space, :class:`SumFn` on a sum, :class:`OnePointFn` on a one-point
compactification (value ``tail`` at infinity and on every copy without a
stored child) and :class:`CantorFn` on the Cantor set (a binary trie over
cylinders, constant on each leaf cylinder).

Representations are canonical: a function that is constant on a subtree is
stored there as a bare :class:`~fractions.Fraction`, children equal to the
tail are dropped and Cantor tries have no split with equal constant halves.  Two functions on the same
tree are therefore equal iff their representations are.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from functools import lru_cache

from .ordinal import cache_hash
from .region import (
    CantorSelect, LeafSelect, Nothing, OnePointSelect, Region, SumSelect, Whole,
    _expand, normalize,
)
from .space import (
    AtInfinity, Cantor, CantorPrefix, CopyIndex, FiniteDiscrete, LeafIndex,
    OnePoint, Space, Sum, SumBranch, tree_member,
)

ZERO_Q = Fraction(0)
ONE_Q = Fraction(1)


class SpaceMismatch(ValueError):
    pass


@cache_hash
@dataclass(frozen=True)
class LeafVec:
    values: tuple


@cache_hash
@dataclass(frozen=True)
class SumFn:
    parts: tuple


@cache_hash
@dataclass(frozen=True)
class OnePointFn:
    tail: Fraction
    children: tuple = ()  # sorted ((copy, FunctionRep), ...)


@cache_hash
@dataclass(frozen=True)
class CantorFn:
    """``left`` on the cylinder ``0...`` and ``right`` on ``1...``; each half is
    a rational or another trie.  Deep cylinders stay cheap: storage grows with
    the number of leaves, not with ``2 ** depth``."""

    left: object
    right: object

    @property
    def depth(self) -> int:
        return 1 + max(_trie_depth(self.left), _trie_depth(self.right))

    @property
    def values(self) -> tuple:
        """One value per cylinder of depth :attr:`depth`."""
        return tuple(_dense(self, self.depth))


FunctionRep = Union[Fraction, LeafVec, SumFn, OnePointFn, CantorFn]


def Q(x) -> Fraction:
    return x if type(x) is Fraction else Fraction(x)


# ---------------------------------------------------------------------------
# canonical constructors

def leaf_vec(values):
    values = tuple(Q(v) for v in values)
    if values and all(v == values[0] for v in values):
        return values[0]
    return LeafVec(values)


def sum_fn(parts):
    parts = tuple(parts)
    first = parts[0] if parts else None
    if type(first) is Fraction and all(type(p) is Fraction and p == first for p in parts):
        return parts[0]
    return SumFn(parts)


def onepoint_fn(tail, children):
    tail = Q(tail)
    items = children.items() if isinstance(children, dict) else children
    return _onepoint_sorted(tail, sorted(items, key=_first))


def _onepoint_sorted(tail, items):
    """``onepoint_fn`` for children already sorted by copy index."""
    kept = tuple((n, c) for n, c in items if not (type(c) is Fraction and c == tail))
    return OnePointFn(tail, kept) if kept else tail


def _first(kv):
    return kv[0]


def cantor_node(left, right):
    if type(left) is Fraction and type(right) is Fraction and left == right:
        return left
    return CantorFn(left, right)


def cantor_fn(depth: int, values):
    """Function taking ``values[i]`` on the ``i``-th cylinder of the given depth."""
    values = [Q(v) for v in values]
    if len(values) != 2 ** depth:
        raise SpaceMismatch(f"cantor function of depth {depth} needs {2 ** depth} values")
    while depth > 0:
        values = [cantor_node(values[i], values[i + 1]) for i in range(0, len(values), 2)]
        depth -= 1
    return values[0]


def _trie_depth(x) -> int:
    return 0 if type(x) is Fraction else x.depth


def _dense(x, depth):
    if depth == 0:
        return [x]
    left, right = (x, x) if type(x) is Fraction else (x.left, x.right)
    return _dense(left, depth - 1) + _dense(right, depth - 1)


def _trie_leaves(x, prefix=()):
    """``(prefix, value)`` for every leaf cylinder of a Cantor trie."""
    if type(x) is Fraction:
        yield prefix, x
    else:
        yield from _trie_leaves(x.left, prefix + (0,))
        yield from _trie_leaves(x.right, prefix + (1,))


def cylinder_fn(prefix, inside, outside):
    """``inside`` on the cylinder ``prefix`` and the constant ``outside`` elsewhere."""
    node = inside
    for b in reversed(prefix):
        node = cantor_node(outside, node) if b else cantor_node(node, outside)
    return node


def is_const(f, c) -> bool:
    return type(f) is Fraction and f == c


def const_fn(t: Space, c) -> Fraction:
    if not isinstance(t, (FiniteDiscrete, Sum, OnePoint, Cantor)):
        raise SpaceMismatch(f"functions on {t} are not supported")
    return Q(c)


@lru_cache(maxsize=1 << 14)
def indicator(t: Space, r: Region):
    r = normalize(t, r)
    if isinstance(r, Whole):
        return ONE_Q
    if isinstance(r, Nothing):
        return ZERO_Q
    r = _expand(t, r)
    if isinstance(t, FiniteDiscrete) and isinstance(r, LeafSelect):
        return leaf_vec(int(i in r.leaves) for i in range(t.n))
    if isinstance(t, Sum) and isinstance(r, SumSelect):
        return sum_fn(indicator(p, s) for p, s in zip(t.parts, r.parts))
    if isinstance(t, OnePoint) and isinstance(r, OnePointSelect):
        tail = Fraction(int(r.include_infinity))
        return onepoint_fn(tail, {n: indicator(tree_member(t, n), s) for n, s in r.overrides})
    if isinstance(t, Cantor) and isinstance(r, CantorSelect):
        return _word_trie(r.words, r.depth)
    raise SpaceMismatch(f"{r!r} does not fit {t}")


def _word_trie(words, depth):
    if not words:
        return ZERO_Q
    if depth == 0:
        return ONE_Q
    left = [w[1:] for w in words if w[0] == 0]
    right = [w[1:] for w in words if w[0] == 1]
    return cantor_node(_word_trie(left, depth - 1), _word_trie(right, depth - 1))


def check_shape(f, t: Space) -> None:
    """Raise :class:`SpaceMismatch` unless ``f`` is a canonical function on
    the tree ``t``."""
    if type(f) is Fraction:
        const_fn(t, f)
        return
    if isinstance(t, FiniteDiscrete) and isinstance(f, LeafVec):
        if len(f.values) == t.n and f == leaf_vec(f.values):
            return
    elif isinstance(t, Sum) and isinstance(f, SumFn):
        if len(f.parts) == len(t.parts) and f == sum_fn(f.parts):
            for p, s in zip(f.parts, t.parts):
                check_shape(p, s)
            return
    elif isinstance(t, OnePoint) and isinstance(f, OnePointFn):
        keys = [n for n, _ in f.children]
        if keys == sorted(set(keys)) and all(n >= 1 for n in keys) \
                and f == onepoint_fn(f.tail, f.children):
            for n, c in f.children:
                check_shape(c, tree_member(t, n))
            return
    elif isinstance(t, Cantor) and isinstance(f, CantorFn):
        if _trie_canonical(f):
            return
    raise SpaceMismatch(f"function does not fit {t}")


def _trie_canonical(x) -> bool:
    if type(x) is Fraction:
        return True
    if not isinstance(x, CantorFn) or cantor_node(x.left, x.right) != x:
        return False
    return _trie_canonical(x.left) and _trie_canonical(x.right)


# ---------------------------------------------------------------------------
# evaluation

def eval_fn(f, q) -> Fraction:
    """Value of ``f`` at the tree point ``q``."""
    if type(f) is Fraction:
        return f
    step, rest = q[0], q[1:]
    if isinstance(f, LeafVec) and isinstance(step, LeafIndex):
        return f.values[step.i]
    if isinstance(f, SumFn) and isinstance(step, SumBranch):
        return eval_fn(f.parts[step.i], rest)
    if isinstance(f, OnePointFn):
        if isinstance(step, AtInfinity):
            return f.tail
        if isinstance(step, CopyIndex):
            child = dict(f.children).get(step.n)
            return f.tail if child is None else eval_fn(child, rest)
    if isinstance(f, CantorFn) and isinstance(step, CantorPrefix):
        # a prefix stands for itself followed by zeros
        node, i = f, 0
        while type(node) is not Fraction:
            b = step.bits[i] if i < len(step.bits) else 0
            node = node.right if b else node.left
            i += 1
        return node
    raise SpaceMismatch(f"point {q!r} does not fit {type(f).__name__}")


def restrict_step(f, step):
    """``f`` on the subtree below one path step."""
    if type(f) is Fraction:
        return f
    if isinstance(f, LeafVec):
        return f.values[step.i]
    if isinstance(f, SumFn):
        return f.parts[step.i]
    if isinstance(f, OnePointFn):
        if isinstance(step, AtInfinity):
            return f.tail
        child = dict(f.children).get(step.n)
        return f.tail if child is None else child
    raise SpaceMismatch(f"cannot descend {step!r} in {type(f).__name__}")


# ---------------------------------------------------------------------------
# pointwise algebra

def _lift(fn, f, g, op=None):
    """Apply the scalar operation ``fn`` pointwise; ``op`` handles subtrees
    (defaults to lifting ``fn`` again)."""
    tf, tg = type(f), type(g)
    if tf is Fraction:
        if tg is Fraction:
            return fn(f, g)
        kind = tg
    else:
        kind = tf
        if tg is not Fraction and tg is not kind:
            raise SpaceMismatch(f"{tf.__name__} against {tg.__name__}")
    rec = op if op is not None else (lambda a, b: _lift(fn, a, b))
    if kind is LeafVec:
        n = len(f.values) if tf is LeafVec else len(g.values)
        fv = f.values if tf is LeafVec else (f,) * n
        gv = g.values if tg is LeafVec else (g,) * n
        if len(fv) != len(gv):
            raise SpaceMismatch("leaf vectors of different lengths")
        return leaf_vec([fn(a, b) for a, b in zip(fv, gv)])
    if kind is SumFn:
        n = len(f.parts) if tf is SumFn else len(g.parts)
        fp = f.parts if tf is SumFn else (f,) * n
        gp = g.parts if tg is SumFn else (g,) * n
        if len(fp) != len(gp):
            raise SpaceMismatch("sum functions of different arity")
        return sum_fn([rec(a, b) for a, b in zip(fp, gp)])
    if kind is OnePointFn:
        if tg is Fraction:
            return _onepoint_sorted(fn(f.tail, g), [(n, rec(c, g)) for n, c in f.children])
        if tf is Fraction:
            return _onepoint_sorted(fn(f, g.tail), [(n, rec(f, c)) for n, c in g.children])
        fc_, gc = dict(f.children), dict(g.children)
        ft, gt = f.tail, g.tail
        kids = [(n, rec(fc_.get(n, ft), gc.get(n, gt))) for n in sorted(fc_.keys() | gc.keys())]
        return _onepoint_sorted(fn(ft, gt), kids)
    if kind is CantorFn:
        fl, fr = (f, f) if tf is Fraction else (f.left, f.right)
        gl, gr = (g, g) if tg is Fraction else (g.left, g.right)
        return cantor_node(rec(fl, gl), rec(fr, gr))
    raise SpaceMismatch(f"unsupported operand {kind.__name__}")


def _plus(a, b):
    if not a:
        return b
    return a if not b else a + b


def _times(a, b):
    if not a or not b:
        return ZERO_Q
    if a == 1:
        return b
    return a if b == 1 else a * b


def add(f, g):
    if type(g) is Fraction:
        if type(f) is Fraction:
            return f + g
        if not g:
            return f
    elif type(f) is Fraction and not f:
        return g
    return _lift(_plus, f, g, add)


def sub(f, g):
    return add(f, scale(g, -1))


def scale(f, c):
    c = Q(c)
    if c == 1:
        return f
    if c == 0:
        return ZERO_Q
    return _lift(_times, f, c)


def add_scalar(f, c):
    return add(f, Q(c))


def mul(f, g):
    if type(f) is Fraction:
        if type(g) is Fraction:
            return f * g
        if not f:
            return ZERO_Q
        if f == 1:
            return g
    elif type(g) is Fraction:
        if not g:
            return ZERO_Q
        if g == 1:
            return f
    return _lift(_times, f, g, mul)


def pointwise_max(f, g):
    return _lift(max, f, g)


def pointwise_min(f, g):
    return _lift(min, f, g)


def pos_part(f):
    return _lift(max, f, ZERO_Q)


def neg_part(f):
    return _lift(lambda a, b: max(-a, b), f, ZERO_Q)


# ---------------------------------------------------------------------------
# norms

def extremes(f) -> tuple:
    """``(inf f, sup f)``.  Both are attained: a one-point function takes its
    tail value at infinity and on every unlisted copy."""
    if type(f) is Fraction:
        return f, f
    if type(f) is LeafVec:
        return min(f.values), max(f.values)
    if type(f) is CantorFn:
        (a, b), (c, d) = extremes(f.left), extremes(f.right)
        return min(a, c), max(b, d)
    if type(f) is SumFn:
        pairs = [extremes(p) for p in f.parts]
    else:
        pairs = [extremes(c) for _, c in f.children]
        pairs.append((f.tail, f.tail))
    return min(lo for lo, _ in pairs), max(hi for _, hi in pairs)


def norm_pos(f) -> Fraction:
    """``||f+||``."""
    return max(extremes(f)[1], ZERO_Q)


def norm_neg(f) -> Fraction:
    return max(-extremes(f)[0], ZERO_Q)


def norm(f) -> Fraction:
    lo, hi = extremes(f)
    return max(hi, -lo)


def decompose(f) -> tuple:
    """``(a, {copy: g})`` with ``f = a + sum of g`` and each ``g`` supported
    on its copy."""
    if type(f) is Fraction:
        return f, {}
    if not isinstance(f, OnePointFn):
        raise SpaceMismatch("decompose needs a function on a one-point space")
    return f.tail, {n: add_scalar(c, -f.tail) for n, c in f.children}


def recompose(a, parts: dict):
    a = Q(a)
    return onepoint_fn(a, {n: add_scalar(g, a) for n, g in parts.items()})


def probe_points(f) -> list:
    """Finitely many tree paths on which ``f`` attains its extrema (the empty
    path stands for any point of a constant subtree)."""
    if type(f) is Fraction:
        return [()]
    if isinstance(f, LeafVec):
        return [(LeafIndex(i),) for i in range(len(f.values))]
    if isinstance(f, SumFn):
        return [(SumBranch(i),) + q for i, p in enumerate(f.parts) for q in probe_points(p)]
    if isinstance(f, OnePointFn):
        out = [(AtInfinity(),)]
        for n, c in f.children:
            out += [(CopyIndex(n),) + q for q in probe_points(c)]
        return out
    if isinstance(f, CantorFn):
        return [(CantorPrefix(w),) for w, _ in _trie_leaves(f)]
    raise TypeError(f)


def minimum(f) -> Fraction:
    return extremes(f)[0]


def size(f) -> int:
    if isinstance(f, (Fraction, LeafVec, CantorFn)):
        return 1
    if isinstance(f, SumFn):
        return 1 + sum(size(p) for p in f.parts)
    return 1 + sum(size(c) for _, c in f.children)


# ---------------------------------------------------------------------------
# placement on subtrees

def embed_at(t: Space, path, g, fill):
    """Function on ``t`` equal to ``g`` on the subtree at ``path`` and to the
    constant ``fill`` elsewhere."""
    fill = Q(fill)
    if not path:
        return g
    step, rest = path[0], path[1:]
    if isinstance(t, Sum):
        parts = [fill] * len(t.parts)
        parts[step.i] = embed_at(t.parts[step.i], rest, g, fill)
        return sum_fn(parts)
    if isinstance(t, OnePoint):
        return onepoint_fn(fill, {step.n: embed_at(tree_member(t, step.n), rest, g, fill)})
    if isinstance(t, FiniteDiscrete):
        vals = [fill] * t.n
        vals[step.i] = Q(g)
        return leaf_vec(vals)
    raise SpaceMismatch(f"cannot place a function at {path!r} in {t}")


# ---------------------------------------------------------------------------
# JSON: constants are bare "p/q" strings

def q_text(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def to_obj(f):
    if type(f) is Fraction:
        return q_text(f)
    if isinstance(f, LeafVec):
        return {"leaf": [q_text(v) for v in f.values]}
    if isinstance(f, SumFn):
        return {"sum": [to_obj(p) for p in f.parts]}
    if isinstance(f, OnePointFn):
        return {"tail": q_text(f.tail), "children": {str(n): to_obj(c) for n, c in f.children}}
    if isinstance(f, CantorFn):
        return {"cantor": {"depth": f.depth, "values": [q_text(v) for v in f.values]}}
    raise TypeError(f)


def from_obj(obj):
    if isinstance(obj, (str, int)):
        return Fraction(obj)
    if "leaf" in obj:
        return leaf_vec(Fraction(v) for v in obj["leaf"])
    if "sum" in obj:
        return sum_fn(from_obj(p) for p in obj["sum"])
    if "tail" in obj:
        kids = {int(k): from_obj(v) for k, v in obj.get("children", {}).items()}
        return onepoint_fn(Fraction(obj["tail"]), kids)
    if "cantor" in obj:
        c = obj["cantor"]
        return cantor_fn(int(c["depth"]), [Fraction(v) for v in c["values"]])
    raise ValueError(f"not a function document: {obj!r}")


def to_json(f) -> str:
    return json.dumps(to_obj(f), sort_keys=True)


def from_json(text: str):
    return from_obj(json.loads(text))
