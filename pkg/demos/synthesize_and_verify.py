#!/usr/bin/env python3
"""
Building an isometric embedding and checking it exactly.

Synthesizes an operator C([1, w^w * 2]) -> C(K), applies it to a function,
runs the randomized exact checks, corrupts it to show the checks notice,
and finishes with a surjection whose composition operator is checked as a
lattice and algebra homomorphism.
"""

import random
from fractions import Fraction

from ckembed import funcalc as fc
from ckembed.ordinal import parse_ordinal
from ckembed.space import to_tree
from ckembed.synthesis import (
    composition_operator, eval_surjection, synth_interval_embedding, synth_surjection,
)
from ckembed.syntax import dumps, operator_to_obj, parse_space, point_to_obj
from ckembed.verify import TrialConfig, mutant_detected, mutants, run_checks, sample_point


def main():
    K = parse_space("sum(op(w,sum(I(w,1),cantor)),I(w,1),fin(2))")
    alpha, m = parse_ordinal("w"), 2
    print("Host space K =", "sum(op(w,sum(I(w,1),cantor)),I(w,1),fin(2))")

    print("\nStep 1: synthesize T: C([1, w^w * 2]) -> C(K)")
    print("----------------------------------------------")
    T = synth_interval_embedding(K, alpha, m)
    text = dumps(operator_to_obj(T))
    print(f"  {type(T).__name__} operator, {len(text)} bytes of JSON")

    print("\nStep 2: apply it")
    print("----------------")
    f = fc.sum_fn([fc.onepoint_fn(Fraction(1, 2), {1: Fraction(-3), 4: Fraction(2)}), Fraction(1)])
    Tf = T.apply(f)
    print("  f  =", fc.to_json(f))
    print("  Tf =", fc.to_json(Tf)[:120] + "...")
    print(f"  ||f|| = {fc.norm(f)}, ||Tf|| = {fc.norm(Tf)}")
    print(f"  ||f+|| = {fc.norm_pos(f)}, ||(Tf)+|| = {fc.norm_pos(Tf)}")

    print("\nStep 3: randomized exact checks")
    print("-------------------------------")
    rep = run_checks(T, TrialConfig(seed=0, trials=40))
    print("  " + rep.summary())

    print("\nStep 4: corrupt the operator")
    print("----------------------------")
    cfg = TrialConfig(seed=0, trials=200)
    for label, build in mutants(T):
        print(f"  {label:<48} {'caught' if mutant_detected(T, build, cfg) else 'MISSED'}")

    print("\nStep 5: a surjection and its composition operator")
    print("--------------------------------------------------")
    rho = synth_surjection(K, alpha, m)
    rng = random.Random(1)
    images = {}
    for _ in range(200):
        q = to_tree(K, sample_point(K, rng))
        images.setdefault(dumps(point_to_obj(eval_surjection(rho, q))), dumps(point_to_obj(q)))
    print(f"  200 sampled points reach {len(images)} distinct images, for example")
    for image, q in sorted(images.items(), key=lambda kv: len(kv[0]))[:4]:
        print(f"    rho({q}) = {image}")
    C = composition_operator(rho)
    rep = run_checks(C, TrialConfig(seed=0, trials=40, checks=("isometry", "lattice", "algebra")))
    print("  " + rep.summary())


if __name__ == "__main__":
    main()
