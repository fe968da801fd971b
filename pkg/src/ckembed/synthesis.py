"""Constructive witnesses: clopen splitting, isometric embedding operators
``C([1, w^alpha * m]) -> C(K)`` and continuous surjections ``K -> [1, w^alpha * m]``.

Everything lives on the canonical tree of ``K``.  An operator built for a
one-point domain glues sub-operators along a *stream* of disjoint clopen
pieces converging to a chosen point ``y`` of high rank:

    T(g) = a * chi_V + sum_n chi_{W_n} T_n(g_n - a)

where ``a`` is the value of ``g`` at infinity, ``V`` a clopen neighbourhood of
``y`` and ``W_n`` the pieces.  Only finitely many ``g_n - a`` are nonzero, so
``apply`` is a finite computation; pieces and sub-operators are built lazily.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import funcalc as fc
from .cardinal import Finite, card_le, Truth3
from .ordinal import INF, ZERO, Infinity, Ordinal, fund_seq, is_limit, pred, succ
from .region import (
    NONE, WHOLE, CantorSelect, Nothing, OnePointSelect, Region, SumSelect, Whole,
    _expand, at_path, cylinder, difference, disjoint, contains, is_empty,
    leftmost, member, neighbourhood, normalize, region_derived_card, restrict,
    subtree, union,
)
from .space import (
    ALEPH0, AtInfinity, Cantor, CantorPrefix, CopyIndex, EmptySpace, Interval,
    LeafIndex, OnePoint, Ramp, Space, Sum, SumBranch, Uniform, _order_key,
    canonical_tree, derived_card, tree_member, zero_dimensional,
)


class SynthesisError(ValueError):
    pass


class InsufficientHeight(SynthesisError):
    pass


class InsufficientDerivedSet(SynthesisError):
    pass


class InsufficientCellularity(SynthesisError):
    pass


class NotZeroDimensional(SynthesisError):
    pass


class KernelEmpty(SynthesisError):
    pass


class RegionOverlap(SynthesisError):
    pass


class ContainmentViolation(SynthesisError):
    pass


@dataclass(frozen=True)
class Demand:
    """Height demanded of the ``n``-th piece: constant, or the fundamental
    sequence of a limit ordinal."""

    kind: str  # "const" | "fund"
    alpha: object

    def at(self, n: int):
        return self.alpha if self.kind == "const" else fund_seq(self.alpha, n)


def demand_for(alpha: Ordinal) -> Demand:
    return Demand("fund", alpha) if is_limit(alpha) else Demand("const", pred(alpha))


# ---------------------------------------------------------------------------
# streams of pieces

class Stream:
    """Disjoint clopen pieces ``W_1, W_2, ...`` inside ``V`` converging to the
    point ``y``; piece ``n`` contains a point of rank ``demand.at(n)``."""

    def __init__(self, K: Space, y, V: Region, demand: Demand):
        self.K, self.y, self.V, self.demand = K, tuple(y), V, demand
        self._pieces = {}
        self.path = self.y[:-1]
        self.node = subtree(K, self.path)
        local = restrict(K, V, self.path)
        if isinstance(self.node, OnePoint):
            local = _expand(self.node, local)
            self.start = 1 + max((n for n, _ in local.overrides), default=0)
            self._copies = []
        elif isinstance(self.node, Cantor):
            local = _expand(self.node, local)
            self.word = min(local.words)
        else:
            raise SynthesisError(f"no stream at a point of {self.node}")

    def copy(self, n: int) -> int:
        """Copy index of the ``n``-th piece at a one-point node."""
        while len(self._copies) < n:
            k = len(self._copies) + 1
            d = self.demand.at(k)
            c = self._copies[-1] + 1 if self._copies else self.start
            fam = self.node.family
            if isinstance(fam, Uniform) and derived_card(fam.space, d).is_zero:
                raise InsufficientHeight(f"copies of {fam.space} have no rank {d} points")
            while derived_card(tree_member(self.node, c), d).is_zero:
                c += 1
            self._copies.append(c)
        return self._copies[n - 1]

    def piece(self, n: int) -> Region:
        if n not in self._pieces:
            if isinstance(self.node, OnePoint):
                r = at_path(self.K, self.path + (CopyIndex(self.copy(n)),), WHOLE)
            else:
                r = at_path(self.K, self.path, cylinder(self.word + (0,) * (n - 1) + (1,)))
            self._pieces[n] = r
        return self._pieces[n]

    def locate(self, q):
        """Index of the piece containing the tree point ``q`` of ``V``."""
        if tuple(q[:len(self.path)]) != self.path:
            return None
        step = q[len(self.path)]
        if isinstance(self.node, OnePoint):
            if not isinstance(step, CopyIndex) or step.n < self.start:
                return None
            n = 1
            while self.copy(n) < step.n:
                n += 1
            return n if self.copy(n) == step.n else None
        bits = step.bits[len(self.word):]
        return bits.index(1) + 1 if 1 in bits else None


def split_region(K: Space, region: Region, demands) -> list:
    """Pairwise disjoint nonempty clopen subregions of ``region``, the
    ``i``-th containing a point of rank ``demands[i]`` (``INF`` asks for a
    point of the perfect kernel)."""
    order = sorted(range(len(demands)), key=lambda i: _order_key(demands[i]), reverse=True)
    rem = normalize(K, region)
    out = [None] * len(demands)
    for i in order:
        b = demands[i]
        above = b if isinstance(b, Infinity) else succ(b)
        y = leftmost(K, rem, above)
        if y is not None:
            piece = Stream(K, y, neighbourhood(K, rem, y), Demand("const", b)).piece(1)
        else:
            y = leftmost(K, rem, b)
            if y is None:
                raise InsufficientHeight(f"no point of rank {b} left in the region")
            piece = neighbourhood(K, rem, y)
        out[i] = piece
        rem = difference(K, rem, piece)
    return out


# ---------------------------------------------------------------------------
# operators

class Operator:
    K: Space
    domain: Space

    def apply(self, f):
        raise NotImplementedError

    @property
    def support(self) -> Region:
        raise NotImplementedError


class _Indicators:
    def __init__(self):
        self._ind = {}

    def chi(self, K, r):
        if r not in self._ind:
            self._ind[r] = fc.indicator(K, r)
        return self._ind[r]


class Base(Operator, _Indicators):
    """``v -> weight * sum_i v_i chi_{R_i}`` on a finite discrete domain."""

    def __init__(self, K, regions, weight=Fraction(1)):
        _Indicators.__init__(self)
        self.K, self.regions, self.weight = K, tuple(regions), Fraction(weight)
        self.domain = canonical_tree(Interval(ZERO, len(self.regions)))
        _check_disjoint(K, self.regions)

    def apply(self, f):
        values = (f,) * len(self.regions) if type(f) is Fraction else f.values
        if not isinstance(f, (Fraction, fc.LeafVec)) or len(values) != len(self.regions):
            raise fc.SpaceMismatch("base operator expects a leaf vector")
        out = fc.ZERO_Q
        for v, r in zip(values, self.regions):
            if v:
                out = fc.add(out, fc.scale(self.chi(self.K, r), v * self.weight))
        return out

    @property
    def support(self):
        return _union_all(self.K, self.regions)


class Blocks(Operator, _Indicators):
    """Operator on a sum domain; block ``i`` is handled by its own operator,
    cut off by its region."""

    def __init__(self, K, parts):
        _Indicators.__init__(self)
        self.K, self.parts = K, tuple(parts)
        self.domain = Sum(tuple(op.domain for _, op in self.parts))
        _check_disjoint(K, [r for r, _ in self.parts])

    def apply(self, f):
        if not isinstance(f, (Fraction, fc.SumFn)):
            raise fc.SpaceMismatch("block operator expects a sum function")
        out = fc.ZERO_Q
        for i, (r, op) in enumerate(self.parts):
            g = fc.restrict_step(f, SumBranch(i))
            out = fc.add(out, fc.mul(self.chi(self.K, r), op.apply(g)))
        return out

    @property
    def support(self):
        return _union_all(self.K, [r for r, _ in self.parts])


class Glue(Operator, _Indicators):
    """``g -> a chi_h + sum_n chi_{W_n} T_n(g_n - a)`` on a one-point domain.

    Parts ``1..n_explicit`` come from ``explicit`` when it is given (a part
    missing there contributes nothing); later parts follow the stream."""

    def __init__(self, K, domain, h, stream, demand, explicit=None, n_explicit=3):
        _Indicators.__init__(self)
        self.K, self.domain, self.h = K, domain, normalize(K, h)
        self.stream, self.demand = stream, demand
        self.n_explicit = n_explicit
        self.explicit = None if explicit is None else dict(explicit)
        self._lazy = {}
        if self.explicit is not None:
            regions = [r for r, _ in self.explicit.values()]
            _check_disjoint(K, regions)
            for r in regions:
                if not contains(K, self.h, r):
                    raise ContainmentViolation(f"part region {r!r} leaves h")

    def part(self, n: int):
        if self.explicit is not None and n <= self.n_explicit:
            return self.explicit.get(n)
        if self.stream is None:
            return None
        if n not in self._lazy:
            r = self.stream.piece(n)
            self._lazy[n] = (r, _synth(self.K, self.demand.at(n), 1, r))
        return self._lazy[n]

    def materialize(self) -> dict:
        return {n: self.part(n) for n in range(1, self.n_explicit + 1)
                if self.part(n) is not None}

    def apply(self, f):
        a, parts = fc.decompose(f)
        out = fc.scale(self.chi(self.K, self.h), a)
        for n, g in sorted(parts.items()):
            p = self.part(n)
            if p is None:
                continue
            r, op = p
            out = fc.add(out, fc.mul(self.chi(self.K, r), op.apply(g)))
        return out

    @property
    def support(self):
        return self.h


class Composition(Operator, _Indicators):
    """``f -> chi_cutoff * (f o rho)``; without a cutoff this is the plain
    composition operator."""

    def __init__(self, rho, cutoff=None):
        _Indicators.__init__(self)
        self.rho, self.K, self.domain = rho, rho.K, rho.target
        self.cutoff = None if cutoff is None else normalize(self.K, cutoff)

    def apply(self, f):
        out = compose(self.rho, f)
        if self.cutoff is not None:
            out = fc.mul(self.chi(self.K, self.cutoff), out)
        return out

    @property
    def support(self):
        return WHOLE if self.cutoff is None else self.cutoff


class Scaled(Operator):
    def __init__(self, inner, factor):
        self.inner, self.factor = inner, Fraction(factor)
        self.K, self.domain = inner.K, inner.domain

    def apply(self, f):
        return fc.scale(self.inner.apply(f), self.factor)

    @property
    def support(self):
        return self.inner.support


def apply(T: Operator, f):
    return T.apply(f)


def _check_disjoint(K, regions):
    regions = list(regions)
    for i in range(len(regions)):
        for j in range(i + 1, len(regions)):
            if not disjoint(K, regions[i], regions[j]):
                raise RegionOverlap(f"regions {i} and {j} overlap")


def _union_all(K, regions):
    out = NONE
    for r in regions:
        out = union(K, out, r)
    return out


def glue(K, domain, h, parts: dict) -> Glue:
    """Glue finitely many explicit parts ``{n: (region, operator)}``."""
    return Glue(canonical_tree(K), domain, h, None, None, explicit=parts,
                n_explicit=max(parts, default=0))


# ---------------------------------------------------------------------------
# embedding synthesis

def _prepare(K, alpha, m, region):
    if not zero_dimensional(K):
        raise NotZeroDimensional(str(K))
    Kt = canonical_tree(K)
    region = normalize(Kt, region)
    have = region_derived_card(Kt, region, alpha)
    if card_le(Finite(m), have) is not Truth3.YES:
        raise InsufficientDerivedSet(f"|K^({alpha})| = {have} inside the region, need {m}")
    return Kt, region


def synth_interval_embedding(K: Space, alpha: Ordinal, m: int = 1, region: Region = WHOLE) -> Operator:
    """PNPP isometric embedding of ``C([1, w^alpha * m])`` into ``C(K)``
    supported by ``region``."""
    Kt, region = _prepare(K, alpha, m, region)
    return _synth(Kt, alpha, m, region)


def _synth(K, alpha, m, region):
    if m > 1:
        pieces = split_region(K, region, [alpha] * m)
        if alpha == ZERO:
            return Base(K, pieces)
        return Blocks(K, [(p, _synth(K, alpha, 1, p)) for p in pieces])
    y = leftmost(K, region, alpha)
    if y is None:
        raise InsufficientHeight(f"no point of rank {alpha} in the region")
    V = neighbourhood(K, region, y)
    if alpha == ZERO:
        return Base(K, (V,))
    demand = demand_for(alpha)
    return Glue(K, canonical_tree(Interval(alpha, 1)), V, Stream(K, y, V, demand), demand)


def synth_onepoint_embedding(K: Space, n, alpha: Ordinal) -> Operator:
    """Isometric embedding of ``C`` of ``n`` copies of ``[1, w^alpha]`` (their
    one-point compactification when ``n`` is ``None``) into ``C(K)``, built
    from disjoint clopen sets meeting ``K^(alpha)``."""
    if not zero_dimensional(K):
        raise NotZeroDimensional(str(K))
    Kt = canonical_tree(K)
    if n is None:
        y = leftmost(Kt, WHOLE, succ(alpha))
        if y is None:
            raise InsufficientCellularity(f"K^({alpha}) is finite")
        demand = Demand("const", alpha)
        domain = OnePoint(ALEPH0, Uniform(canonical_tree(Interval(alpha, 1))))
        return Glue(Kt, domain, WHOLE, Stream(Kt, y, neighbourhood(Kt, WHOLE, y), demand), demand)
    try:
        pieces = split_region(Kt, WHOLE, [alpha] * n)
    except InsufficientHeight as e:
        raise InsufficientCellularity(f"fewer than {n} disjoint clopen sets meet K^({alpha})") from e
    if alpha == ZERO:
        return Base(Kt, pieces)
    return Blocks(Kt, [(p, _synth(Kt, alpha, 1, p)) for p in pieces])


# ---------------------------------------------------------------------------
# surjections

class SurjectionMap:
    K: Space
    target: Space

    def eval(self, q):
        raise NotImplementedError


class PointMap(SurjectionMap):
    def __init__(self, K, target, point):
        self.K, self.target, self.point = K, target, tuple(point)

    def eval(self, q):
        return self.point


class Route(SurjectionMap):
    """``x -> step_i . rho_i(x)`` on region ``R_i``; ``default`` elsewhere."""

    def __init__(self, K, target, pieces, default):
        self.K, self.target = K, target
        self.pieces = tuple((normalize(K, r), s, sub) for r, s, sub in pieces)
        self.default = tuple(default)
        _check_disjoint(K, [r for r, _, _ in self.pieces])

    def eval(self, q):
        for r, step, sub in self.pieces:
            if member(self.K, r, q):
                return (step,) + sub.eval(q)
        return self.default


class StreamRoute(SurjectionMap):
    """Piece ``W_n`` of a stream maps onto copy ``n`` of a one-point target;
    every other point goes to infinity."""

    def __init__(self, K, target, stream, demand):
        self.K, self.target, self.stream, self.demand = K, target, stream, demand
        self._subs = {}
        self.default = (AtInfinity(),)

    def sub(self, n):
        if n not in self._subs:
            self._subs[n] = _surj(self.K, self.demand.at(n), 1, self.stream.piece(n))
        return self._subs[n]

    def eval(self, q):
        if not member(self.K, self.stream.V, q):
            return self.default
        n = self.stream.locate(q)
        if n is None:
            return self.default
        return (CopyIndex(n),) + self.sub(n).eval(q)


class CantorShift(SurjectionMap):
    """The cylinder ``prefix`` of the Cantor node at ``path`` maps onto the
    Cantor set by deleting the prefix; everything else goes to ``000...``."""

    def __init__(self, K, path, prefix):
        self.K, self.target = K, Cantor()
        self.path, self.prefix = tuple(path), tuple(prefix)
        self.default = (CantorPrefix(()),)
        self.region = at_path(K, self.path, cylinder(self.prefix))

    def eval(self, q):
        if not member(self.K, self.region, q):
            return self.default
        bits = q[len(self.path)].bits
        return (CantorPrefix(bits[len(self.prefix):]),)


def eval_surjection(rho: SurjectionMap, q):
    return rho.eval(tuple(q))


def compose(rho: SurjectionMap, f):
    """``f o rho`` as a function on ``rho.K``."""
    K = rho.K
    if type(f) is Fraction:
        return fc.const_fn(K, f)
    if isinstance(rho, PointMap):
        return fc.const_fn(K, fc.eval_fn(f, rho.point) if rho.point else f)
    if isinstance(rho, CantorShift):
        if not isinstance(f, fc.CantorFn):
            raise fc.SpaceMismatch("cantor target expects a cantor function")
        fd = fc.eval_fn(f, (CantorPrefix(()),))
        g = fc.cylinder_fn(rho.prefix, f, fd)
        return fc.embed_at(K, rho.path, g, fd)
    fd = fc.eval_fn(f, rho.default)
    out = fd
    if isinstance(rho, Route):
        items = [(r, fc.restrict_step(f, s), sub) for r, s, sub in rho.pieces]
    elif isinstance(rho, StreamRoute):
        items = [(rho.stream.piece(n), c, rho.sub(n)) for n, c in f.children]
    else:
        raise TypeError(rho)
    for r, g, sub in items:
        if fc.is_const(g, fd):
            continue
        inner = fc.add_scalar(compose(sub, g), -fd)
        out = fc.add(out, fc.mul(fc.indicator(K, r), inner))
    return out


def synth_surjection(K: Space, alpha: Ordinal, m: int = 1, region: Region = WHOLE) -> SurjectionMap:
    """Continuous map of the canonical tree of ``K`` onto the canonical tree of
    ``[1, w^alpha * m]`` whose restriction to ``region`` is already onto."""
    Kt, region = _prepare(K, alpha, m, region)
    return _surj(Kt, alpha, m, region)


def _surj(K, alpha, m, region):
    target = canonical_tree(Interval(alpha, m))
    if m > 1:
        pieces = split_region(K, region, [alpha] * m)
        first = difference(K, WHOLE, _union_all(K, pieces[1:]))
        regions = [first] + pieces[1:]
        if alpha == ZERO:
            return Route(K, target, [(r, LeafIndex(i), PointMap(K, target, ()))
                                     for i, r in enumerate(regions)], (LeafIndex(0),))
        return Route(K, target, [(r, SumBranch(i), _surj(K, alpha, 1, p))
                                 for i, (r, p) in enumerate(zip(regions, pieces))],
                     (SumBranch(0), AtInfinity()))
    if alpha == ZERO:
        return PointMap(K, target, (LeafIndex(0),))
    y = leftmost(K, region, alpha)
    if y is None:
        raise InsufficientHeight(f"no point of rank {alpha} in the region")
    V = neighbourhood(K, region, y)
    demand = demand_for(alpha)
    return StreamRoute(K, target, Stream(K, y, V, demand), demand)


def composition_operator(rho: SurjectionMap) -> Composition:
    return Composition(rho)


# ---------------------------------------------------------------------------
# Cantor targets

def _find_cantor(K, r, path=()):
    r = _expand(K, normalize(K, r))
    if isinstance(r, Nothing):
        return None
    if isinstance(K, Cantor):
        return path, min(r.words)
    if isinstance(K, Sum):
        for i, (p, s) in enumerate(zip(K.parts, r.parts)):
            hit = _find_cantor(p, s, path + (SumBranch(i),))
            if hit:
                return hit
        return None
    if isinstance(K, OnePoint):
        for n, s in r.overrides:
            hit = _find_cantor(tree_member(K, n), s, path + (CopyIndex(n),))
            if hit:
                return hit
        if r.include_infinity and isinstance(K.family, Uniform) \
                and not derived_card(K.family.space, INF).is_zero:
            n = 1 + max((n for n, _ in r.overrides), default=0)
            return _find_cantor(tree_member(K, n), WHOLE, path + (CopyIndex(n),))
    return None


def synth_cantor_surjection(K: Space, region: Region = WHOLE) -> CantorShift:
    if not zero_dimensional(K):
        raise NotZeroDimensional(str(K))
    Kt = canonical_tree(K)
    hit = _find_cantor(Kt, region)
    if hit is None:
        raise KernelEmpty("the region misses the perfect kernel")
    return CantorShift(Kt, *hit)


def synth_cantor_embedding(K: Space, region: Region = WHOLE) -> Composition:
    rho = synth_cantor_surjection(K, region)
    return Composition(rho, cutoff=region)


def synth_kernel_surjection(K: Space, n: int) -> Route:
    """Map of ``K`` onto ``n`` disjoint copies of the Cantor set, one copy per
    disjoint clopen set meeting the perfect kernel."""
    if not zero_dimensional(K):
        raise NotZeroDimensional(str(K))
    Kt = canonical_tree(K)
    try:
        pieces = split_region(Kt, WHOLE, [INF] * n)
    except InsufficientHeight as e:
        raise InsufficientCellularity(f"fewer than {n} disjoint clopen sets meet the kernel") from e
    first = difference(Kt, WHOLE, _union_all(Kt, pieces[1:]))
    regions = [first] + pieces[1:]
    target = Sum((Cantor(),) * n)
    subs = [synth_cantor_surjection(Kt, p) for p in pieces]
    return Route(Kt, target, [(r, SumBranch(i), s) for i, (r, s) in enumerate(zip(regions, subs))],
                 (SumBranch(0), CantorPrefix(())))
