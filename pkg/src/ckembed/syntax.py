"""Text syntax for spaces and JSON documents for regions, points, operators
and surjections.

Space expressions::

    fin(n)  I(<ordinal>,<nat>)  unit  cantor  empty
    sum(e1,...,ek)  op(<cardinal>, e)  opramp(<limit ordinal>)
    <atom name>  der(<atom name>, <order>)

Operators serialize structurally.  A glued operator stores its stream
(``y``, ``V`` and the demand) plus any explicit parts; the remaining parts
are rebuilt deterministically on load.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction

from . import funcalc as fc
from . import synthesis as sy
from .cardinal import ALEPH0, parse_cardinal
from .ordinal import (
    INF, Infinity, Opaque, Ordinal, OrdinalSyntaxError, _OrdinalParser, parse_ordinal, to_text,
)
from .region import (
    NONE, WHOLE, CantorSelect, LeafSelect, Nothing, OnePointSelect, SumSelect, Whole,
)
from .space import (
    BUILTIN_ATOMS, EMPTY, TWO_C, TWO_C_SUCC, W1, W1_SUCC, AtInfinity, Cantor,
    CantorPrefix, CopyIndex, FiniteDiscrete, Interval, LeafIndex, OnePoint,
    OrdinalPoint, Ramp, RealPoint, Space, SpaceError, Sum, SumBranch,
    SymbolicAtom, Uniform, Unit, to_text_space,
)

OPAQUE_ORDERS = {o.label: o for o in (W1, W1_SUCC, TWO_C, TWO_C_SUCC)}


class SpaceSyntaxError(ValueError):
    def __init__(self, text: str, pos: int, expected: str):
        self.text, self.pos, self.expected = text, pos, expected
        before = text[:pos]
        self.line = before.count("\n") + 1
        self.col = pos - (before.rfind("\n") + 1) + 1
        super().__init__(f"line {self.line}, col {self.col}: expected {expected}")


_WORD = re.compile(r"\s*([A-Za-z_][A-Za-z_0-9]*)")
_INDEX = re.compile(r"\s*([^,()\s]+)")
_ATOMS = sorted(BUILTIN_ATOMS, key=len, reverse=True)


class _SpaceParser:
    def __init__(self, text: str):
        self.text, self.pos = text, 0

    def fail(self, expected):
        raise SpaceSyntaxError(self.text, self._skip(), expected)

    def _skip(self) -> int:
        i = self.pos
        while i < len(self.text) and self.text[i].isspace():
            i += 1
        return i

    def peek(self) -> str:
        i = self._skip()
        return self.text[i] if i < len(self.text) else ""

    def take(self, ch: str):
        if self.peek() != ch:
            self.fail(repr(ch))
        self.pos = self._skip() + 1

    def ordinal(self) -> Ordinal:
        p = _OrdinalParser(self.text, self.pos)
        try:
            out = p.ordinal()
        except OrdinalSyntaxError as e:
            raise SpaceSyntaxError(self.text, e.pos, e.expected) from None
        self.pos = p.pos
        return out

    def nat(self) -> int:
        m = re.compile(r"\s*(\d+)").match(self.text, self.pos)
        if not m:
            self.fail("natural number")
        self.pos = m.end()
        return int(m.group(1))

    def atom_name(self):
        i = self._skip()
        for name in _ATOMS:
            if self.text.startswith(name, i):
                self.pos = i + len(name)
                return name
        return None

    def order(self):
        m = _INDEX.match(self.text, self.pos)
        if m and m.group(1) in ("inf", "oo"):
            self.pos = m.end()
            return INF
        i = self._skip()
        for label in sorted(OPAQUE_ORDERS, key=len, reverse=True):
            if self.text.startswith(label, i):
                self.pos = i + len(label)
                return OPAQUE_ORDERS[label]
        return self.ordinal()

    def space(self) -> Space:
        start = self._skip()
        name = self.atom_name()
        if name is not None:
            return SymbolicAtom(name)
        m = _WORD.match(self.text, self.pos)
        if not m:
            self.fail("space expression")
        word = m.group(1)
        self.pos = m.end()
        try:
            return self._node(word)
        except SpaceSyntaxError:
            raise
        except (SpaceError, ValueError) as e:
            raise SpaceSyntaxError(self.text, start, f"valid space ({e})") from None

    def _node(self, word: str) -> Space:
        if word == "unit":
            return Unit()
        if word == "cantor":
            return Cantor()
        if word == "empty":
            return EMPTY
        if word not in ("fin", "I", "sum", "op", "opramp", "der"):
            raise SpaceSyntaxError(self.text, self.pos - len(word), "space constructor")
        self.take("(")
        if word == "fin":
            out = FiniteDiscrete(self.nat())
        elif word == "I":
            alpha = self.ordinal()
            self.take(",")
            out = Interval(alpha, self.nat())
        elif word == "sum":
            parts = [self.space()]
            while self.peek() == ",":
                self.take(",")
                parts.append(self.space())
            out = Sum(tuple(parts))
        elif word == "op":
            m = _INDEX.match(self.text, self.pos)
            if not m:
                self.fail("cardinal")
            try:
                index = parse_cardinal(m.group(1))
            except ValueError:
                self.fail("cardinal")
            self.pos = m.end()
            self.take(",")
            out = OnePoint(index, Uniform(self.space()))
        elif word == "opramp":
            out = OnePoint(ALEPH0, Ramp(self.ordinal()))
        else:
            name = self.atom_name()
            if name is None:
                self.fail("atom name")
            self.take(",")
            out = SymbolicAtom(name, self.order())
        self.take(")")
        return out


def parse_space(text: str) -> Space:
    p = _SpaceParser(text)
    out = p.space()
    if p.peek():
        p.fail("end of input")
    return out


def print_space(s: Space) -> str:
    return to_text_space(s)


# ---------------------------------------------------------------------------
# orders, points and regions

def order_text(o) -> str:
    if isinstance(o, Infinity):
        return "inf"
    if isinstance(o, Opaque):
        return o.label
    return to_text(o)


def parse_order(text: str):
    p = _SpaceParser(text)
    out = p.order()
    if p.peek():
        p.fail("end of input")
    return out


def step_to_obj(step):
    if isinstance(step, SumBranch):
        return {"sum": step.i}
    if isinstance(step, CopyIndex):
        return {"copy": step.n}
    if isinstance(step, AtInfinity):
        return "inf"
    if isinstance(step, LeafIndex):
        return {"leaf": step.i}
    if isinstance(step, OrdinalPoint):
        return {"ordinal": to_text(step.o)}
    if isinstance(step, CantorPrefix):
        return {"bits": "".join(map(str, step.bits))}
    if isinstance(step, RealPoint):
        return {"real": fc.q_text(step.x)}
    raise TypeError(step)


def step_from_obj(obj):
    if obj == "inf":
        return AtInfinity()
    (key, val), = obj.items()
    if key == "sum":
        return SumBranch(int(val))
    if key == "copy":
        return CopyIndex(int(val))
    if key == "leaf":
        return LeafIndex(int(val))
    if key == "ordinal":
        return OrdinalPoint(parse_ordinal(val))
    if key == "bits":
        return CantorPrefix(tuple(int(b) for b in val))
    if key == "real":
        return RealPoint(Fraction(val))
    raise ValueError(f"unknown point step {obj!r}")


def point_to_obj(p) -> list:
    return [step_to_obj(s) for s in p]


def point_from_obj(obj) -> tuple:
    return tuple(step_from_obj(s) for s in obj)


def region_to_obj(r):
    if isinstance(r, Whole):
        return "all"
    if isinstance(r, Nothing):
        return "none"
    if isinstance(r, SumSelect):
        return {"sum": [region_to_obj(p) for p in r.parts]}
    if isinstance(r, OnePointSelect):
        return {"inf": r.include_infinity,
                "copies": {str(n): region_to_obj(s) for n, s in r.overrides}}
    if isinstance(r, LeafSelect):
        return {"leaves": sorted(r.leaves)}
    if isinstance(r, CantorSelect):
        return {"depth": r.depth, "words": sorted("".join(map(str, w)) for w in r.words)}
    raise TypeError(r)


def region_from_obj(obj):
    if obj == "all":
        return WHOLE
    if obj == "none":
        return NONE
    if "sum" in obj:
        return SumSelect(tuple(region_from_obj(p) for p in obj["sum"]))
    if "inf" in obj:
        kids = sorted((int(n), region_from_obj(s)) for n, s in obj["copies"].items())
        return OnePointSelect(bool(obj["inf"]), tuple(kids))
    if "leaves" in obj:
        return LeafSelect(frozenset(int(i) for i in obj["leaves"]))
    if "depth" in obj:
        return CantorSelect(int(obj["depth"]),
                            frozenset(tuple(int(b) for b in w) for w in obj["words"]))
    raise ValueError(f"unknown region {obj!r}")


# ---------------------------------------------------------------------------
# operators

def _demand_to_obj(d):
    return None if d is None else {"kind": d.kind, "alpha": order_text(d.alpha)}


def _demand_from_obj(obj):
    return None if obj is None else sy.Demand(obj["kind"], parse_order(obj["alpha"]))


def _stream_to_obj(s):
    if s is None:
        return None
    return {"y": point_to_obj(s.y), "V": region_to_obj(s.V), "demand": _demand_to_obj(s.demand)}


def _stream_from_obj(K, obj):
    if obj is None:
        return None
    return sy.Stream(K, point_from_obj(obj["y"]), region_from_obj(obj["V"]),
                     _demand_from_obj(obj["demand"]))


def operator_to_obj(T, top=True) -> dict:
    if isinstance(T, sy.Base):
        out = {"type": "base", "regions": [region_to_obj(r) for r in T.regions],
               "weight": fc.q_text(T.weight)}
    elif isinstance(T, sy.Blocks):
        out = {"type": "blocks", "parts": [
            {"region": region_to_obj(r), "op": operator_to_obj(op, False)} for r, op in T.parts]}
    elif isinstance(T, sy.Glue):
        explicit = None
        if T.explicit is not None:
            explicit = {str(n): {"region": region_to_obj(r), "op": operator_to_obj(op, False)}
                        for n, (r, op) in sorted(T.explicit.items())}
        out = {"type": "glue", "domain": print_space(T.domain), "h": region_to_obj(T.h),
               "stream": _stream_to_obj(T.stream), "demand": _demand_to_obj(T.demand),
               "explicit": explicit, "n_explicit": T.n_explicit}
    elif isinstance(T, sy.Composition):
        out = {"type": "composition", "rho": surjection_to_obj(T.rho, False),
               "cutoff": None if T.cutoff is None else region_to_obj(T.cutoff)}
    elif isinstance(T, sy.Scaled):
        out = {"type": "scaled", "factor": fc.q_text(T.factor),
               "inner": operator_to_obj(T.inner, False)}
    else:
        raise TypeError(T)
    if top:
        out["K"] = print_space(T.K)
    return out


def operator_from_obj(obj, K: Space = None):
    K = parse_space(obj["K"]) if K is None else K
    kind = obj["type"]
    if kind == "base":
        return sy.Base(K, [region_from_obj(r) for r in obj["regions"]], Fraction(obj["weight"]))
    if kind == "blocks":
        return sy.Blocks(K, [(region_from_obj(p["region"]), operator_from_obj(p["op"], K))
                             for p in obj["parts"]])
    if kind == "glue":
        explicit = None
        if obj["explicit"] is not None:
            explicit = {int(n): (region_from_obj(p["region"]), operator_from_obj(p["op"], K))
                        for n, p in obj["explicit"].items()}
        return sy.Glue(K, parse_space(obj["domain"]), region_from_obj(obj["h"]),
                       _stream_from_obj(K, obj["stream"]), _demand_from_obj(obj["demand"]),
                       explicit=explicit, n_explicit=int(obj["n_explicit"]))
    if kind == "composition":
        cut = obj["cutoff"]
        return sy.Composition(surjection_from_obj(obj["rho"], K),
                              None if cut is None else region_from_obj(cut))
    if kind == "scaled":
        return sy.Scaled(operator_from_obj(obj["inner"], K), Fraction(obj["factor"]))
    raise ValueError(f"unknown operator type {kind!r}")


# ---------------------------------------------------------------------------
# surjections

def surjection_to_obj(rho, top=True) -> dict:
    if isinstance(rho, sy.PointMap):
        out = {"type": "point", "point": point_to_obj(rho.point)}
    elif isinstance(rho, sy.Route):
        out = {"type": "route", "default": point_to_obj(rho.default), "pieces": [
            {"region": region_to_obj(r), "step": step_to_obj(s), "map": surjection_to_obj(m, False)}
            for r, s, m in rho.pieces]}
    elif isinstance(rho, sy.StreamRoute):
        out = {"type": "stream", "stream": _stream_to_obj(rho.stream),
               "demand": _demand_to_obj(rho.demand)}
    elif isinstance(rho, sy.CantorShift):
        out = {"type": "cantor", "path": point_to_obj(rho.path),
               "prefix": "".join(map(str, rho.prefix))}
    else:
        raise TypeError(rho)
    out["target"] = print_space(rho.target)
    if top:
        out["K"] = print_space(rho.K)
    return out


def surjection_from_obj(obj, K: Space = None):
    K = parse_space(obj["K"]) if K is None else K
    target = parse_space(obj["target"])
    kind = obj["type"]
    if kind == "point":
        return sy.PointMap(K, target, point_from_obj(obj["point"]))
    if kind == "route":
        return sy.Route(K, target, [
            (region_from_obj(p["region"]), step_from_obj(p["step"]), surjection_from_obj(p["map"], K))
            for p in obj["pieces"]], point_from_obj(obj["default"]))
    if kind == "stream":
        return sy.StreamRoute(K, target, _stream_from_obj(K, obj["stream"]),
                              _demand_from_obj(obj["demand"]))
    if kind == "cantor":
        return sy.CantorShift(K, point_from_obj(obj["path"]),
                              tuple(int(b) for b in obj["prefix"]))
    raise ValueError(f"unknown surjection type {kind!r}")


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)
