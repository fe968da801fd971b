#!/usr/bin/env python3
"""
Deciding whether C(L) embeds into C(K).

Walks through isometric and isomorphic questions, shows the rule behind
each answer, and prints the table of conditions for a few nonmetrizable
spaces with and without the continuum hypothesis.
"""

from ckembed.decide import CONDITIONS, check_condition, isometric_embeds, isomorphic_embeds
from ckembed.syntax import parse_space

PAIRS = [
    ("I(w,1)", "sum(I(w,2),fin(3))"),
    ("I(w,3)", "sum(I(w,1),I(2,4))"),
    ("I(w,1)", "unit"),
    ("cantor", "I(w^(3),1)"),
    ("sum(cantor,fin(2))", "sum(I(1,1),cantor)"),
]


def main():
    print("Isometric embeddings")
    print("--------------------")
    for L, K in PAIRS:
        v = isometric_embeds(parse_space(L), parse_space(K))
        cert = "certificate attached" if v.certificate is not None else "no certificate"
        print(f"  C({L}) -> C({K}): {v.answer.value} [{v.rule}] {cert}")
        if v.note:
            print(f"      {v.note}")

    print("\nIsomorphic embeddings (Szlenk comparison)")
    print("-----------------------------------------")
    for L, K in [("I(2,1)", "I(w,1)"), ("I(w^(2),1)", "I(w,5)"), ("fin(4)", "fin(3)")]:
        v = isomorphic_embeds(parse_space(L), parse_space(K))
        print(f"  C({L}) -> C({K}): {v.answer.value} [{v.rule}]")

    print("\nConditions against K = [0,1]")
    print("----------------------------")
    K = parse_space("unit")
    for L in ["[1,omega1]", "bN_minus_N", "[1,2^c]", "op(c,fin(1))"]:
        for ch in (False, True):
            row = [f"{c}={check_condition(c, parse_space(L), K, ch).answer.value}" for c in CONDITIONS]
            print(f"  {L:<14} CH={'on ' if ch else 'off'} " + " ".join(row))

    print("\nWhere CH matters")
    print("----------------")
    L, K = parse_space("op(c,fin(1))"), parse_space("[1,omega1]")
    for ch in (False, True):
        v = check_condition("iii", L, K, ch)
        print(f"  CH={'on ' if ch else 'off'} profile condition: {v.answer.value} {v.note}")


if __name__ == "__main__":
    main()
