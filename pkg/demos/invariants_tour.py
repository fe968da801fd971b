#!/usr/bin/env python3
"""
Tour of the topological invariants.

Parses a few compact spaces, takes derived sets, and reads off heights,
Szlenk indices, normal forms and relative cellularity.
"""

from ckembed.decide import cellularity_bound, szlenk_of
from ckembed.ordinal import INF, ext_text, gamma_of, parse_ordinal
from ckembed.space import Interval, derived, derived_card, height, ms_normal_form, perfect_kernel
from ckembed.syntax import parse_space, print_space


def show(label, value):
    print(f"  {label:<34} {value}")


def main():
    print("Ordinals")
    print("--------")
    for text in ["3", "w+1", "w^(2)*3+w", "w^(w)+5"]:
        a = parse_ordinal(text)
        show(f"gamma({text})", ext_text(gamma_of(a)))

    print("\nCountable intervals [1, w^alpha * m]")
    print("------------------------------------")
    for text in ["I(1,1)", "I(w,1)", "I(w,3)", "I(w^(2),1)"]:
        s = parse_space(text)
        show(f"height {text}", ext_text(height(s)))
        show(f"Szlenk index of C({text})", ext_text(szlenk_of(s)))
    s = parse_space("I(w^(2),1)")
    for order in ["1", "w", "w+1", "w^(2)"]:
        show(f"derived I(w^(2),1) of order {order}", print_space(derived(s, parse_ordinal(order))))

    print("\nSums and one-point compactifications")
    print("------------------------------------")
    s = parse_space("sum(I(w,2),op(w,fin(3)),I(2,5))")
    alpha, m = ms_normal_form(s)
    print(f"  {print_space(s)}")
    show("is homeomorphic to", print_space(Interval(alpha, m)))
    show("points of order w", derived_card(s, parse_ordinal("w")))

    print("\nNon-scattered spaces")
    print("--------------------")
    s = parse_space("sum(cantor,I(w,1),cantor)")
    show("perfect kernel", print_space(perfect_kernel(s)))
    show("height", ext_text(height(s)))
    value, n = cellularity_bound(s, INF)
    show("c(kernel, K)", f"{value} (witnessed up to {n})")
    value, n = cellularity_bound(parse_space("sum(I(w,1),I(w,1),fin(4))"), parse_ordinal("w"))
    show("c(K^(w), K) for two copies", f"{value} (witnessed up to {n})")


if __name__ == "__main__":
    main()
