"""Ordinals below epsilon_0 in Cantor normal form.

An :class:`Ordinal` is a tuple of ``(exponent, coefficient)`` terms with
strictly decreasing exponents, each exponent itself an :class:`Ordinal`.
The extended order adjoins :data:`INF` (larger than every ordinal) and
:class:`Opaque` markers, which stand for ordinals beyond epsilon_0 that
only occur inside declared profiles of symbolic spaces.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from functools import total_ordering
from typing import Iterable, Union


def cache_hash(cls):
    """Memoize the structural hash of a frozen dataclass; deep trees are
    hashed on every cache lookup otherwise."""
    base = cls.__hash__

    def __hash__(self):
        try:
            return self.__dict__["_hash"]
        except KeyError:
            h = base(self)
            object.__setattr__(self, "_hash", h)
            return h

    cls.__hash__ = __hash__
    return cls


class OrdinalError(ValueError):
    pass


class SubtractUnderflow(OrdinalError):
    pass


class NotALimit(OrdinalError):
    pass


class Order(Enum):
    LT = -1
    EQ = 0
    GT = 1


@cache_hash
@total_ordering
@dataclass(frozen=True)
class Ordinal:
    terms: tuple = ()

    # -- construction -------------------------------------------------
    @staticmethod
    def nat(n: int) -> "Ordinal":
        if n < 0:
            raise OrdinalError(f"negative natural {n}")
        return ZERO if n == 0 else Ordinal(((ZERO, n),))

    # -- order ----------------------------------------------------------
    def __lt__(self, other):
        if isinstance(other, Ordinal):
            return _cmp(self, other) < 0
        if isinstance(other, (Opaque, Infinity)):
            return True
        return NotImplemented

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "Ordinal") -> "Ordinal":
        return add(self, other)

    def __str__(self):
        return to_text(self)

    def __repr__(self):
        return f"Ordinal({to_text(self)})"

    @property
    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not self.terms[0][0])

    def as_int(self) -> int:
        if not self.is_finite:
            raise OrdinalError(f"{self} is not finite")
        return self.terms[0][1] if self.terms else 0

    @property
    def leading_exponent(self) -> "Ordinal":
        return self.terms[0][0] if self.terms else ZERO

    @property
    def min_exponent(self) -> "Ordinal":
        """Exponent of the last CNF term (the Cantor-Bendixson rank of the
        ordinal as a point of an ordinal interval)."""
        return self.terms[-1][0] if self.terms else ZERO


ZERO = Ordinal(())
ONE = Ordinal(((ZERO, 1),))
OMEGA = Ordinal(((ONE, 1),))


def _cmp(a: Ordinal, b: Ordinal) -> int:
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        if ea != eb:
            return _cmp(ea, eb)
        if ca != cb:
            return -1 if ca < cb else 1
    return (len(a.terms) > len(b.terms)) - (len(a.terms) < len(b.terms))


def compare(a: Ordinal, b: Ordinal) -> Order:
    return Order(_cmp(a, b))


@total_ordering
@dataclass(frozen=True)
class Opaque:
    """An ordinal beyond epsilon_0, known only by label and relative rank."""

    label: str
    key: int = 0

    def __lt__(self, other):
        if isinstance(other, Ordinal):
            return False
        if isinstance(other, Opaque):
            return self.key < other.key
        if isinstance(other, Infinity):
            return True
        return NotImplemented

    def __str__(self):
        return self.label


class Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return isinstance(other, Infinity)

    def __gt__(self, other):
        return not isinstance(other, Infinity)

    def __ge__(self, other):
        return True

    def __eq__(self, other):
        return isinstance(other, Infinity)

    def __hash__(self):
        return hash("ckembed.INF")

    def __repr__(self):
        return "INF"

    __str__ = lambda self: "inf"


INF = Infinity()

ExtendedOrdinal = Union[Ordinal, Opaque, Infinity]


def is_ordinal(x) -> bool:
    return isinstance(x, Ordinal)


# -- arithmetic -------------------------------------------------------------

def omega_pow(e: Ordinal, c: int = 1) -> Ordinal:
    if c < 1:
        raise OrdinalError("coefficient must be positive")
    return Ordinal(((e, c),))


def add(a: Ordinal, b: Ordinal) -> Ordinal:
    if not b.terms:
        return a
    lead = b.terms[0][0]
    kept = []
    for e, c in a.terms:
        k = _cmp(e, lead)
        if k > 0:
            kept.append((e, c))
        elif k == 0:
            kept.append((e, c + b.terms[0][1]))
            return Ordinal(tuple(kept) + b.terms[1:])
        else:
            break
    return Ordinal(tuple(kept) + b.terms)


def make(terms: Iterable[tuple]) -> Ordinal:
    """Sum ``omega^e * c`` over ``terms`` left to right (ordinal addition)."""
    out = ZERO
    for e, c in terms:
        if not isinstance(e, Ordinal):
            e = Ordinal.nat(e)
        if c < 1:
            raise OrdinalError(f"zero or negative coefficient {c}")
        out = add(out, omega_pow(e, c))
    return out


def mul_nat(a: Ordinal, n: int) -> Ordinal:
    if n < 1:
        raise OrdinalError("multiplier must be a positive integer")
    if not a.terms:
        return a
    (e, c), rest = a.terms[0], a.terms[1:]
    return Ordinal(((e, c * n),) + rest)


def succ(a: Ordinal) -> Ordinal:
    return add(a, ONE)


def omega_mul(beta: Ordinal, xi: Ordinal) -> Ordinal:
    """``omega^beta * xi`` (left multiplication by a power of omega)."""
    return Ordinal(tuple((add(beta, e), c) for e, c in xi.terms))


def omega_div(beta: Ordinal, o: Ordinal) -> Ordinal | None:
    """Inverse of :func:`omega_mul`: the ``xi`` with ``omega^beta * xi == o``,
    or ``None`` when ``omega^beta`` does not divide ``o``."""
    out = []
    for e, c in o.terms:
        if e < beta:
            return None
        out.append((left_subtract(beta, e), c))
    return Ordinal(tuple(out))


def left_subtract(b: Ordinal, a: Ordinal) -> Ordinal:
    """The unique ``g`` with ``b + g == a``; requires ``b <= a``."""
    if b > a:
        raise SubtractUnderflow(f"{b} > {a}")
    for i, (ea, ca) in enumerate(a.terms):
        if i >= len(b.terms):
            return Ordinal(a.terms[i:])
        eb, cb = b.terms[i]
        if ea != eb:
            # ea > eb since b <= a
            return Ordinal(a.terms[i:])
        if ca != cb:
            return Ordinal(((ea, ca - cb),) + a.terms[i + 1:])
    return ZERO


class Kind(Enum):
    ZERO = "zero"
    SUCCESSOR = "successor"
    LIMIT = "limit"


def classify(a: Ordinal) -> tuple[Kind, Ordinal | None]:
    if not a.terms:
        return Kind.ZERO, None
    e, c = a.terms[-1]
    if e.terms:
        return Kind.LIMIT, None
    pred_terms = a.terms[:-1] + (((e, c - 1),) if c > 1 else ())
    return Kind.SUCCESSOR, Ordinal(pred_terms)


def is_limit(a: Ordinal) -> bool:
    return classify(a)[0] is Kind.LIMIT


def pred(a: Ordinal) -> Ordinal:
    kind, p = classify(a)
    if kind is not Kind.SUCCESSOR:
        raise OrdinalError(f"{a} is not a successor")
    return p


def fund_seq(a: Ordinal, n: int) -> Ordinal:
    """Canonical fundamental sequence of a limit ordinal, ``n >= 1``."""
    if n < 1:
        raise OrdinalError("index must be positive")
    kind, _ = classify(a)
    if kind is not Kind.LIMIT:
        raise NotALimit(str(a))
    e, c = a.terms[-1]
    head = Ordinal(a.terms[:-1] + (((e, c - 1),) if c > 1 else ()))
    ekind, d = classify(e)
    if ekind is Kind.SUCCESSOR:
        return add(head, omega_pow(d, n))
    return add(head, omega_pow(fund_seq(e, n)))


def is_gamma(a) -> bool:
    if isinstance(a, Infinity):
        return True
    if isinstance(a, Opaque):
        return a.label.startswith("G(")
    return not a.terms or (len(a.terms) == 1 and a.terms[0][1] == 1)


def gamma_of(a):
    """Least gamma number (0, omega^b, or INF) not below ``a``."""
    if isinstance(a, Infinity):
        return INF
    if isinstance(a, Opaque):
        return a if is_gamma(a) else Opaque(f"G({a.label})", a.key)
    if is_gamma(a):
        return a
    return omega_pow(succ(a.leading_exponent))


# -- text syntax ---------------------------------------------------------------

def to_text(a: Ordinal) -> str:
    if not a.terms:
        return "0"
    parts = []
    for e, c in a.terms:
        if not e.terms:
            parts.append(str(c))
        elif c == 1:
            parts.append(f"w^({to_text(e)})")
        else:
            parts.append(f"w^({to_text(e)})*{c}")
    return "+".join(parts)


def ext_text(a) -> str:
    return to_text(a) if isinstance(a, Ordinal) else str(a)


_TOKEN = re.compile(r"\s*(?:(\d+)|(w)|(\^)|(\()|(\))|(\*)|(\+))")


class OrdinalSyntaxError(OrdinalError):
    def __init__(self, text, pos, expected):
        self.text, self.pos, self.expected = text, pos, expected
        super().__init__(f"col {pos + 1}: expected {expected} in {text!r}")


class _OrdinalParser:
    def __init__(self, text: str, pos: int = 0):
        self.text = text
        self.pos = pos

    def peek(self) -> str:
        i = self.pos
        while i < len(self.text) and self.text[i].isspace():
            i += 1
        return self.text[i] if i < len(self.text) else ""

    def take(self, ch: str):
        if self.peek() != ch:
            raise OrdinalSyntaxError(self.text, self.pos, repr(ch))
        self.pos = self.text.index(ch, self.pos) + 1

    def nat(self) -> int:
        m = re.compile(r"\s*(\d+)").match(self.text, self.pos)
        if not m:
            raise OrdinalSyntaxError(self.text, self.pos, "natural number")
        self.pos = m.end()
        return int(m.group(1))

    def ordinal(self) -> Ordinal:
        terms = [self.term()]
        while self.peek() == "+":
            self.take("+")
            terms.append(self.term())
        out = ZERO
        for t in terms:
            out = add(out, t)
        return out

    def term(self) -> Ordinal:
        ch = self.peek()
        if ch.isdigit():
            return Ordinal.nat(self.nat())
        if ch != "w":
            raise OrdinalSyntaxError(self.text, self.pos, "natural number or 'w'")
        self.take("w")
        e = ONE
        if self.peek() == "^":
            self.take("^")
            self.take("(")
            e = self.ordinal()
            self.take(")")
        c = 1
        if self.peek() == "*":
            self.take("*")
            c = self.nat()
            if c == 0:
                return ZERO
        return omega_pow(e, c)


def parse_ordinal(text: str) -> Ordinal:
    p = _OrdinalParser(text)
    out = p.ordinal()
    if p.peek():
        raise OrdinalSyntaxError(text, p.pos, "end of input")
    return out


def parse_ext_ordinal(text: str):
    if text.strip() in ("inf", "oo", "∞"):
        return INF
    return parse_ordinal(text)
