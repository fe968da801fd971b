"""Random generators, exact oracles and the operator check harness.

Every check is an exact rational equality.  Operators are exercised on
random finitely supported functions; a mutant (a single-field corruption of
a valid operator) counts as detected when it either fails to construct or
fails one of the enabled checks.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import funcalc as fc
from .cardinal import ALEPH0, Finite, Truth3, card_le
from .ordinal import (
    INF, ONE, ZERO, Infinity, Ordinal, add, classify, Kind, is_limit, mul_nat,
    omega_pow, make,
)
from .region import NONE, WHOLE, complement, contains, union
from .space import (
    AtInfinity, Cantor, CantorPrefix, CopyIndex, FiniteDiscrete, Interval,
    LeafIndex, OnePoint, OrdinalPoint, Ramp, RealPoint, Space, Sum, SumBranch,
    Uniform, Unit, derived, derived_card, derived_point, height, in_derived,
    interval_top, is_valid_point, members, tree_member,
)
from .synthesis import (
    Base, Blocks, Composition, Glue, Operator, Scaled, SynthesisError,
)

ALL_CHECKS = ("linear", "isometry", "pnpp", "positive", "support", "lattice", "algebra")
EMBEDDING_CHECKS = ("linear", "isometry", "pnpp", "positive", "support")


@dataclass
class TrialConfig:
    seed: int = 0
    trials: int = 100
    max_depth: int = 3
    max_children: int = 3
    max_coeff: int = 5
    checks: tuple = EMBEDDING_CHECKS
    allow_unit: bool = False
    stop_early: bool = False


@dataclass
class Report:
    counts: dict = field(default_factory=dict)  # check -> [passed, failed]
    first_failure: dict | None = None

    @property
    def ok(self) -> bool:
        return all(failed == 0 for _, failed in self.counts.values())

    def record(self, check, passed, detail=None):
        c = self.counts.setdefault(check, [0, 0])
        c[0 if passed else 1] += 1
        if not passed and self.first_failure is None:
            if callable(detail):
                detail = detail()
            self.first_failure = dict(check=check, **(detail or {}))

    def summary(self) -> str:
        parts = [f"{k}: {p} passed, {f} failed" for k, (p, f) in sorted(self.counts.items())]
        return "; ".join(parts) or "no checks run"


# ---------------------------------------------------------------------------
# random ordinals, spaces and points

def random_ordinal(rng: random.Random, depth: int = 2, max_terms: int = 3) -> Ordinal:
    """Random CNF ordinal with nested exponents up to ``depth``."""
    if depth <= 0:
        return Ordinal.nat(rng.randint(0, 4))
    k = rng.randint(0, max_terms)
    exps = sorted({random_ordinal(rng, depth - 1, 2) for _ in range(k)}, reverse=True)
    return make([(e, rng.randint(1, 3)) for e in exps])


def random_below(rng: random.Random, alpha: Ordinal) -> Ordinal:
    """Random ordinal strictly below ``alpha > 0``."""
    if alpha.is_finite:
        return Ordinal.nat(rng.randrange(alpha.as_int()))
    i = rng.randrange(len(alpha.terms))
    e, c = alpha.terms[i]
    head = Ordinal(alpha.terms[:i])
    c2 = rng.randrange(c)
    if c2:
        head = add(head, omega_pow(e, c2))
    if e != ZERO and rng.random() < 0.7:
        head = add(head, omega_pow(random_below(rng, e), rng.randint(1, 3)))
    return head


def random_limit(rng: random.Random, depth: int = 2) -> Ordinal:
    while True:
        a = random_ordinal(rng, depth)
        if a and is_limit(a):
            return a


def random_space(cfg: TrialConfig, rng: random.Random = None, depth: int = None) -> Space:
    """Random constructive space; zero-dimensional unless ``allow_unit``."""
    rng = rng or random.Random(cfg.seed)
    depth = cfg.max_depth if depth is None else depth
    roll = rng.random()
    if depth <= 0 or roll < 0.35:
        kinds = ["fin", "int", "int", "cantor"] + (["unit"] if cfg.allow_unit else [])
        kind = rng.choice(kinds)
        if kind == "fin":
            return FiniteDiscrete(rng.randint(1, 4))
        if kind == "int":
            return Interval(random_ordinal(rng, 1 if depth <= 1 else 2), rng.randint(1, 3))
        return Cantor() if kind == "cantor" else Unit()
    if roll < 0.65:
        return Sum(tuple(random_space(cfg, rng, depth - 1) for _ in range(rng.randint(2, 3))))
    if roll < 0.9:
        return OnePoint(ALEPH0, Uniform(random_space(cfg, rng, depth - 1)))
    return OnePoint(ALEPH0, Ramp(random_limit(rng, 2)))


def random_interval_point(rng: random.Random, alpha: Ordinal, m: int) -> Ordinal:
    j = rng.randint(0, m - 1)
    lead = mul_nat(omega_pow(alpha), j) if j else ZERO
    if alpha == ZERO or rng.random() < 0.2:
        return add(lead, omega_pow(alpha))
    tail = ZERO
    e = alpha
    for _ in range(rng.randint(1, 3)):
        if e == ZERO:
            break
        e = random_below(rng, e)
        tail = add(tail, omega_pow(e, rng.randint(1, 3)))
    return add(lead, tail)


def sample_point(s: Space, rng: random.Random):
    """Random raw point of ``s``."""
    if isinstance(s, FiniteDiscrete):
        return (LeafIndex(rng.randrange(s.n)),)
    if isinstance(s, Interval):
        return (OrdinalPoint(random_interval_point(rng, s.alpha, s.m)),)
    if isinstance(s, Cantor):
        return (CantorPrefix(tuple(rng.randint(0, 1) for _ in range(rng.randint(0, 4)))),)
    if isinstance(s, Unit):
        return (RealPoint(Fraction(rng.randint(0, 8), 8)),)
    if isinstance(s, Sum):
        i = rng.randrange(len(s.parts))
        return (SumBranch(i),) + sample_point(s.parts[i], rng)
    if isinstance(s, OnePoint):
        if rng.random() < 0.25:
            return (AtInfinity(),)
        n = rng.randint(1, 5)
        return (CopyIndex(n),) + sample_point(members(s, n), rng)
    raise ValueError(f"cannot sample points of {s}")


def sample_order(rng: random.Random, s: Space):
    """Random derivative order for ``s``: mostly below its height, sometimes
    at or beyond it, sometimes infinite."""
    h = height(s)
    r = rng.random()
    if r < 0.1:
        return INF
    if isinstance(h, Infinity) or r < 0.2:
        return random_ordinal(rng, 2)
    if h == ZERO:
        return ZERO
    return random_below(rng, add(h, ONE))


def random_host(rng: random.Random, alpha: Ordinal, m: int, noise: int = 2) -> Space:
    """Random zero-dimensional space with at least ``m`` points of rank ``alpha``."""
    carriers = [
        lambda: Interval(add(alpha, Ordinal.nat(rng.randint(0, 1))), rng.randint(1, m)),
        lambda: OnePoint(ALEPH0, Uniform(Interval(alpha, 1))),
        lambda: Sum((Interval(alpha, 1), FiniteDiscrete(rng.randint(1, 3)))),
        lambda: OnePoint(ALEPH0, Uniform(Sum((Interval(alpha, 1), Cantor())))),
    ]
    cfg = TrialConfig(max_depth=2)
    parts = []
    while not parts or card_le(Finite(m), derived_card(Sum(tuple(parts)), alpha)) is not Truth3.YES:
        parts.append(rng.choice(carriers)())
    parts += [random_space(cfg, rng) for _ in range(rng.randint(0, noise))]
    rng.shuffle(parts)
    return parts[0] if len(parts) == 1 else Sum(tuple(parts))


def random_scalar(rng: random.Random, cfg: TrialConfig) -> Fraction:
    return Fraction(rng.randint(-cfg.max_coeff, cfg.max_coeff), rng.randint(1, 3))


def random_function(t: Space, cfg: TrialConfig, rng: random.Random = None, depth: int = None):
    """Random canonical function on the canonical tree ``t``."""
    rng = rng or random.Random(cfg.seed)
    depth = cfg.max_depth if depth is None else depth
    if isinstance(t, FiniteDiscrete):
        return fc.leaf_vec(random_scalar(rng, cfg) for _ in range(t.n))
    if isinstance(t, Sum):
        return fc.sum_fn(random_function(p, cfg, rng, depth) for p in t.parts)
    if isinstance(t, OnePoint):
        tail = random_scalar(rng, cfg)
        kids = {}
        if depth > 0:
            for _ in range(rng.randint(0, cfg.max_children)):
                n = rng.choice((1, 1, 2, 2, 3, 4, 6))
                kids[n] = random_function(tree_member(t, n), cfg, rng, depth - 1)
        return fc.onepoint_fn(tail, kids)
    if isinstance(t, Cantor):
        d = rng.randint(0, 3)
        return fc.cantor_fn(d, [random_scalar(rng, cfg) for _ in range(2 ** d)])
    raise ValueError(f"no functions on {t}")


# ---------------------------------------------------------------------------
# oracles

def derived_membership_agrees(s: Space, beta, p) -> bool:
    """Path-recursive membership against validity of the converted point in
    the closed-form derivative."""
    expected = in_derived(s, p, beta)
    q = derived_point(s, beta, p)
    got = q is not None and is_valid_point(derived(s, beta), q)
    return expected == got


def oracle_derived_membership(s: Space, beta, sample: int = 100, seed: int = 0) -> Report:
    rng = random.Random(seed)
    rep = Report()
    for _ in range(sample):
        p = sample_point(s, rng)
        ok = derived_membership_agrees(s, beta, p)
        rep.record("derived", ok, dict(space=str(s), beta=str(beta), point=repr(p)))
    return rep


# ---------------------------------------------------------------------------
# operator checks

def _parts_supported(T: Operator, depth: int) -> bool:
    """Every part operator stays inside its region, checked ``depth`` levels
    down (the trials never reach deeper parts)."""
    if depth < 0:
        return True
    if isinstance(T, Blocks):
        items = T.parts
    elif isinstance(T, Glue):
        items = list(T.materialize().values())
    else:
        return True
    return all(contains(T.K, r, op.support) and _parts_supported(op, depth - 1)
               for r, op in items)


def run_checks(T: Operator, cfg: TrialConfig, support=None) -> Report:
    """Run the configured checks on ``cfg.trials`` random inputs.  ``support``
    is the declared support region (defaults to the operator's own)."""
    rng = random.Random(cfg.seed)
    rep = Report()
    K, L = T.K, T.domain
    support = T.support if support is None else support
    outside = fc.indicator(K, complement(K, support))
    checks = set(cfg.checks)
    if "support" in checks:
        rep.record("support", _parts_supported(T, cfg.max_depth + 1), dict(reason="part operator leaves its region"))
    if "algebra" in checks:
        rep.record("algebra", T.apply(fc.const_fn(L, 1)) == fc.const_fn(K, 1), dict(reason="T(1) != 1"))
    for trial in range(cfg.trials):
        f = random_function(L, cfg, rng)
        g = random_function(L, cfg, rng)
        c = random_scalar(rng, cfg)
        Tf, Tg = T.apply(f), T.apply(g)
        def detail(trial=trial, f=f, g=g, c=c):
            return dict(trial=trial, f=fc.to_json(f), g=fc.to_json(g), c=fc.q_text(c))
        if "linear" in checks:
            lhs = T.apply(fc.add(f, fc.scale(g, c)))
            rep.record("linear", lhs == fc.add(Tf, fc.scale(Tg, c)), detail)
        if "isometry" in checks:
            rep.record("isometry", fc.norm(Tf) == fc.norm(f), detail)
        if "pnpp" in checks:
            rep.record("pnpp", fc.norm_pos(Tf) == fc.norm_pos(f), detail)
        if "positive" in checks:
            rep.record("positive", fc.minimum(T.apply(fc.pos_part(f))) >= 0, detail)
        if "support" in checks:
            rep.record("support", fc.is_const(fc.mul(Tf, outside), Fraction(0)), detail)
        if "lattice" in checks:
            ok = (T.apply(fc.pointwise_max(f, g)) == fc.pointwise_max(Tf, Tg)
                  and T.apply(fc.pointwise_min(f, g)) == fc.pointwise_min(Tf, Tg))
            rep.record("lattice", ok, detail)
        if "algebra" in checks:
            rep.record("algebra", T.apply(fc.mul(f, g)) == fc.mul(Tf, Tg), detail)
        if cfg.stop_early and rep.first_failure is not None:
            break
    return rep


# ---------------------------------------------------------------------------
# mutants

def _glue_with(T: Glue, explicit, h=None) -> Glue:
    return Glue(T.K, T.domain, T.h if h is None else h, T.stream, T.demand,
                explicit=explicit, n_explicit=T.n_explicit)


def mutants(T: Operator, depth: int = 2) -> list:
    """Single-field corruptions of ``T`` as ``(label, builder)`` pairs; the
    builder may raise when the corruption violates a construction invariant."""
    out = []
    if isinstance(T, Base):
        if T.regions:
            out.append(("base region emptied", lambda: Base(T.K, (NONE,) + T.regions[1:], T.weight)))
        out.append(("base weight doubled", lambda: Base(T.K, T.regions, T.weight * 2)))
    elif isinstance(T, Blocks):
        if len(T.parts) > 1:
            def swapped():
                (r0, o0), (r1, o1) = T.parts[0], T.parts[1]
                return Blocks(T.K, ((r1, o0), (r0, o1)) + T.parts[2:])
            out.append(("block regions swapped", swapped))
        if depth > 1:
            for label, build in mutants(T.parts[0][1], depth - 1):
                out.append((f"block 1: {label}",
                            lambda b=build: Blocks(T.K, ((T.parts[0][0], b()),) + T.parts[1:])))
    elif isinstance(T, Glue):
        parts = T.materialize()
        for n in sorted(parts):
            out.append((f"glue part {n} dropped",
                        lambda n=n: _glue_with(T, {k: v for k, v in parts.items() if k != n})))
        if 1 in parts and 2 in parts:
            def swapped():
                (r1, o1), (r2, o2) = parts[1], parts[2]
                return _glue_with(T, {**parts, 1: (r2, o1), 2: (r1, o2)})
            out.append(("glue part regions swapped", swapped))
        inner = NONE
        for r, _ in parts.values():
            inner = union(T.K, inner, r)
        out.append(("glue h shrunk to its explicit parts", lambda: _glue_with(T, parts, h=inner)))
        if depth > 1 and 1 in parts:
            r1, o1 = parts[1]
            for label, build in mutants(o1, depth - 1):
                out.append((f"glue part 1: {label}",
                            lambda b=build: _glue_with(T, {**parts, 1: (r1, b())})))
    elif isinstance(T, Composition):
        out.append(("composition scaled", lambda: Scaled(T, 2)))
    out.append(("output scaled by -1", lambda: Scaled(T, -1)))
    return out


def mutant_detected(T: Operator, build, cfg: TrialConfig) -> bool:
    try:
        M = build()
    except (SynthesisError, ValueError):
        return True
    cfg = TrialConfig(**{**cfg.__dict__, "stop_early": True})
    return not run_checks(M, cfg, support=T.support).ok
