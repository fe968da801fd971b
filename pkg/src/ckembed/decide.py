"""Decision procedures for embeddings ``C(L) -> C(K)``.

Answers are three-valued (:class:`~ckembed.cardinal.Truth3`) and always carry a
rule tag naming the criterion that settled them.  Positive answers on
constructive zero-dimensional hosts come with a synthesized certificate
(an operator or a surjection) that the :mod:`verify` harness can check.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

from .cardinal import Cardinal, Finite, Truth3, card_le
from .ordinal import INF, ZERO, Infinity, gamma_of, omega_pow, pred
from .space import (
    Cantor, EmptySpace, Space, _le, _order_key, breakpoints, derived_card,
    height, is_constructive, metrizable, ms_normal_form, rel_cellularity,
    scattered, top_order, zero_dimensional,
)
from . import synthesis as sy

RULE_ISOMETRIC = "isometric: top-derivative cardinality"
RULE_NONSCATTERED = "isometric: nonscattered L needs nonscattered K"
RULE_MILJUTIN = "Rosenthal/Miljutin (decision-only)"
RULE_SZLENK = "isomorphic: Szlenk index comparison"
RULE_FINITE_DIM = "isomorphic: finite dimension"
RULE_DERIVED_PROFILE = "derived-cardinality profile"
RULE_HEIGHT = "height bound"
RULE_REL_CELL = "relative cellularity"
RULE_CCC = "ccc obstruction"
RULE_NECESSARY_OK = "necessary conditions hold"
RULE_SURJECTION = "surjection synthesized"
RULE_METRIZABLE_EQUIV = "equivalent to condition iv for metrizable L"
RULE_OPEN = "open for nonmetrizable L"

CONDITIONS = ("ii", "iii", "iv", "cell_necessary")


class NotMetrizable(ValueError):
    pass


@dataclass(frozen=True)
class Verdict:
    answer: Truth3
    rule: str
    certificate: object = None
    note: str = ""

    def to_obj(self, certificate_path: Optional[str] = None) -> dict:
        return {"answer": self.answer.value, "rule": self.rule,
                "certificate": certificate_path}


class CellularityBound(NamedTuple):
    value: Cardinal
    witness_max: int


def szlenk_of(K: Space):
    """Szlenk index of ``C(K)``: the gamma number of the height of ``K``."""
    return gamma_of(height(K))


def _synthesizable(K: Space) -> bool:
    return is_constructive(K) and zero_dimensional(K)


def _require_metrizable(L: Space):
    if not metrizable(L):
        raise NotMetrizable(f"{L} is not metrizable")


def _interval_certificate(L: Space, K: Space):
    alpha, m = ms_normal_form(L)
    return sy.synth_interval_embedding(K, alpha, m)


def _condition_iv(L: Space, K: Space, assume_ch: bool) -> Verdict:
    if not scattered(L):
        if scattered(K):
            return Verdict(Truth3.NO, RULE_NONSCATTERED, note="K is scattered")
        return Verdict(Truth3.YES, RULE_NONSCATTERED)
    if isinstance(L, EmptySpace):
        return Verdict(Truth3.YES, RULE_ISOMETRIC)
    beta = top_order(L)
    need, have = derived_card(L, beta), derived_card(K, beta)
    ans = card_le(need, have, assume_ch)
    return Verdict(ans, RULE_ISOMETRIC, note=f"|L^({beta})| = {need}, |K^({beta})| = {have}")


def isometric_embeds(L: Space, K: Space, assume_ch: bool = False) -> Verdict:
    _require_metrizable(L)
    v = _condition_iv(L, K, assume_ch)
    if v.answer is not Truth3.YES:
        return v
    if not scattered(L):
        cert = None
        if isinstance(L, Cantor) and _synthesizable(K):
            cert = sy.synth_cantor_embedding(K)
        return Verdict(Truth3.YES, RULE_MILJUTIN, cert, v.note)
    if isinstance(L, EmptySpace):
        return v
    if not _synthesizable(K) or not is_constructive(L):
        if not scattered(K) and metrizable(K):
            return Verdict(Truth3.YES, RULE_MILJUTIN, None, v.note)
        return v
    return Verdict(Truth3.YES, v.rule, _interval_certificate(L, K), v.note)


def _finite_size(s: Space):
    c = derived_card(s, ZERO)
    return c.n if c.is_finite else None


def isomorphic_embeds(L: Space, K: Space) -> Verdict:
    _require_metrizable(L)
    n = _finite_size(L)
    if n is not None:
        # Szlenk indices do not see dimension; compare it directly
        k = _finite_size(K)
        if k is not None and n > k:
            return Verdict(Truth3.NO, RULE_FINITE_DIM, note=f"dim {n} > dim {k}")
        cert = sy.synth_interval_embedding(K, ZERO, n) if n and _synthesizable(K) else None
        return Verdict(Truth3.YES, RULE_FINITE_DIM, cert)
    sl, sk = szlenk_of(L), szlenk_of(K)
    note = f"Sz(C(L)) = {sl}, Sz(C(K)) = {sk}"
    if not _le(sl, sk):
        return Verdict(Truth3.NO, RULE_SZLENK, note=note)
    cert = None
    if _synthesizable(K):
        if isinstance(sl, Infinity):
            cert = sy.synth_cantor_embedding(K)
        else:
            # sl = w^(a+1); C(L) is isomorphic to C([1, w^(w^a)])
            cert = sy.synth_interval_embedding(K, omega_pow(pred(sl.leading_exponent)))
    return Verdict(Truth3.YES, RULE_SZLENK, cert, note)


# ---------------------------------------------------------------------------
# condition-by-condition checks

def _orders(L: Space, K: Space) -> list:
    pts = set(breakpoints(L)) | set(breakpoints(K))
    return sorted(pts, key=_order_key) + [INF]


def _condition_iii(L, K, assume_ch) -> Verdict:
    out = Truth3.YES
    note = ""
    for b in _orders(L, K):
        need, have = derived_card(L, b), derived_card(K, b)
        ans = card_le(need, have, assume_ch)
        if ans is Truth3.NO:
            return Verdict(Truth3.NO, RULE_DERIVED_PROFILE,
                           note=f"alpha = {b}: |L^(alpha)| = {need} > |K^(alpha)| = {have}")
        if ans is not Truth3.YES and not note:
            note = f"alpha = {b}: {need} vs {have} undecided"
        out = out & ans
    return Verdict(out, RULE_DERIVED_PROFILE, note=note)


def _cell_necessary(L, K, assume_ch) -> Verdict:
    hl, hk = height(L), height(K)
    if not _le(hl, hk):
        return Verdict(Truth3.NO, RULE_HEIGHT, note=f"ht(L) = {hl} > ht(K) = {hk}")
    c0 = card_le(rel_cellularity(L, ZERO), rel_cellularity(K, ZERO), assume_ch)
    if c0 is Truth3.NO:
        return Verdict(Truth3.NO, RULE_CCC, note=(
            f"c(L) = {rel_cellularity(L, ZERO)} > c(K) = {rel_cellularity(K, ZERO)}"))
    out = c0
    for b in _orders(L, K):
        cl, ck = rel_cellularity(L, b), rel_cellularity(K, b)
        ans = card_le(cl, ck, assume_ch)
        if ans is Truth3.NO:
            return Verdict(Truth3.NO, RULE_REL_CELL,
                           note=f"alpha = {b}: c(L^(alpha), L) = {cl} > c(K^(alpha), K) = {ck}")
        out = out & ans
    return Verdict(out, RULE_NECESSARY_OK)


def _condition_ii(L, K, assume_ch) -> Verdict:
    if _synthesizable(K):
        try:
            if isinstance(L, Cantor):
                return Verdict(Truth3.YES, RULE_SURJECTION, sy.synth_cantor_surjection(K))
            if is_constructive(L) and scattered(L) and not isinstance(L, EmptySpace):
                alpha, m = ms_normal_form(L)
                return Verdict(Truth3.YES, RULE_SURJECTION, sy.synth_surjection(K, alpha, m))
        except sy.SynthesisError:
            pass
    nec = _cell_necessary(L, K, assume_ch)
    if nec.answer is Truth3.NO:
        return nec
    if metrizable(L):
        iv = _condition_iv(L, K, assume_ch)
        return Verdict(iv.answer, RULE_METRIZABLE_EQUIV, note=iv.note)
    return Verdict(Truth3.UNKNOWN, RULE_OPEN)


def check_condition(cond: str, L: Space, K: Space, assume_ch: bool = False) -> Verdict:
    if cond == "iv":
        return _condition_iv(L, K, assume_ch)
    if cond == "iii":
        return _condition_iii(L, K, assume_ch)
    if cond == "ii":
        return _condition_ii(L, K, assume_ch)
    if cond == "cell_necessary":
        return _cell_necessary(L, K, assume_ch)
    raise ValueError(f"unknown condition {cond!r}; expected one of {CONDITIONS}")


# ---------------------------------------------------------------------------
# cellularity of derived sets and of the perfect kernel

def _witness(K: Space, order, n: int):
    if isinstance(order, Infinity):
        return sy.synth_kernel_surjection(K, n)
    return sy.synth_onepoint_embedding(K, n, order)


def cellularity_bound(K: Space, order, cap: int = 8) -> CellularityBound:
    """``c(K^(order), K)`` together with the largest ``n <= cap`` for which a
    family of ``n`` disjoint clopen sets meeting ``K^(order)`` was realised
    by a synthesized witness.  When the value is a finite ``n`` the witness
    for ``n + 1`` is required to fail."""
    value = rel_cellularity(K, order)
    if not _synthesizable(K):
        return CellularityBound(value, 0)
    best = 0
    for n in range(1, cap + 1):
        try:
            _witness(K, order, n)
        except sy.InsufficientCellularity:
            break
        best = n
    if value.is_finite:
        if best != min(value.n, cap):
            raise AssertionError(f"witnesses reach {best}, value is {value}")
        if value.n < cap:
            try:
                _witness(K, order, value.n + 1)
            except sy.InsufficientCellularity:
                pass
            else:
                raise AssertionError(f"witness exists for {value.n + 1} > {value}")
    return CellularityBound(value, best)


def cellularity_witness(K: Space, order, n: int):
    """The certificate behind :func:`cellularity_bound` for ``n`` sets."""
    return _witness(K, order, n)
