"""Command-line front end.

Exit codes: 0 yes or success, 1 no, 2 independent or unknown, 3 error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import funcalc as fc
from . import synthesis as sy
from .cardinal import Truth3
from .decide import (
    CONDITIONS, NotMetrizable, cellularity_bound, check_condition, isometric_embeds,
    isomorphic_embeds, szlenk_of,
)
from .ordinal import OrdinalError, ext_text, parse_ordinal
from .space import (
    Interval, SpaceError, derived, is_valid_point, height, ms_normal_form, perfect_kernel,
)
from .syntax import (
    SpaceSyntaxError, dumps, operator_from_obj, operator_to_obj, order_text, parse_order,
    parse_space, point_from_obj, point_to_obj, print_space, surjection_from_obj,
    surjection_to_obj,
)
from .verify import ALL_CHECKS, EMBEDDING_CHECKS, TrialConfig, mutant_detected, mutants, run_checks

EXIT = {Truth3.YES: 0, Truth3.NO: 1, Truth3.INDEPENDENT: 2, Truth3.UNKNOWN: 2}


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(3, f"{self.prog}: error: {message}\n")


def _emit(args, text: str, obj) -> None:
    print(dumps(obj) if args.json else text)


def _read_json(path: str):
    with open(path) as fh:
        return json.load(fh)


def _write_certificate(path, cert):
    if path is None or cert is None:
        return None
    if isinstance(cert, sy.Operator):
        obj = operator_to_obj(cert)
    else:
        obj = surjection_to_obj(cert)
    with open(path, "w") as fh:
        fh.write(dumps(obj) + "\n")
    return path


def _verdict(args, v, label=""):
    path = _write_certificate(getattr(args, "certificate", None), v.certificate)
    obj = v.to_obj(path)
    if args.json:
        print(dumps(dict(obj, note=v.note) if v.note else obj))
    else:
        line = f"{label}{v.answer.value} [{v.rule}]"
        if v.note:
            line += f" {v.note}"
        if path:
            line += f" certificate={path}"
        print(line)
    return EXIT[v.answer]


# ---------------------------------------------------------------------------
# verbs

def cmd_height(args):
    h = ext_text(height(parse_space(args.space)))
    _emit(args, h, {"height": h})


def cmd_derive(args):
    d = print_space(derived(parse_space(args.space), parse_order(args.order)))
    _emit(args, d, {"derived": d})


def cmd_kernel(args):
    k = print_space(perfect_kernel(parse_space(args.space)))
    _emit(args, k, {"kernel": k})


def cmd_msnf(args):
    alpha, m = ms_normal_form(parse_space(args.space))
    text = print_space(Interval(alpha, m))
    _emit(args, text, {"alpha": order_text(alpha), "m": m, "space": text})


def cmd_szlenk(args):
    s = ext_text(szlenk_of(parse_space(args.space)))
    _emit(args, s, {"szlenk": s})


def cmd_cellularity(args):
    value, n = cellularity_bound(parse_space(args.space), parse_order(args.order), args.cap)
    _emit(args, f"{value} witness_max={n}", {"value": str(value), "witness_max": n})


def cmd_embeds(args):
    L, K = parse_space(args.L), parse_space(args.K)
    if args.isomorphic:
        return _verdict(args, isomorphic_embeds(L, K))
    return _verdict(args, isometric_embeds(L, K, args.assume_ch))


def cmd_conditions(args):
    L, K = parse_space(args.L), parse_space(args.K)
    verdicts = {c: check_condition(c, L, K, args.assume_ch) for c in CONDITIONS}
    if args.json:
        print(dumps({c: dict(v.to_obj(), note=v.note) for c, v in verdicts.items()}))
    else:
        for c, v in verdicts.items():
            print(f"{c}: {v.answer.value} [{v.rule}]" + (f" {v.note}" if v.note else ""))
    answers = [v.answer for v in verdicts.values()]
    if Truth3.NO in answers:
        return 1
    return 0 if all(a is Truth3.YES for a in answers) else 2


def cmd_synth(args):
    K = parse_space(args.space)
    kind = args.kind
    if kind in ("embedding", "surjection") and args.alpha is None:
        raise CliError(f"--alpha is required for {kind}")
    alpha = None if args.alpha is None else parse_ordinal(args.alpha)
    if kind == "embedding":
        obj = operator_to_obj(sy.synth_interval_embedding(K, alpha, args.m))
    elif kind == "surjection":
        obj = surjection_to_obj(sy.synth_surjection(K, alpha, args.m))
    elif kind == "onepoint":
        obj = operator_to_obj(sy.synth_onepoint_embedding(K, args.m, alpha))
    elif kind == "cantor":
        obj = operator_to_obj(sy.synth_cantor_embedding(K))
    else:
        obj = surjection_to_obj(sy.synth_kernel_surjection(K, args.m))
    text = dumps(obj)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
        _emit(args, f"wrote {args.output}", {"output": args.output})
    else:
        print(text)


def cmd_apply(args):
    T = operator_from_obj(_read_json(args.operator))
    f = fc.from_obj(_read_json(args.function))
    print(dumps(fc.to_obj(T.apply(f))))


def cmd_surject_eval(args):
    rho = surjection_from_obj(_read_json(args.surjection))
    p = point_from_obj(json.loads(args.point))
    if not is_valid_point(rho.K, p, tree=True):
        raise CliError(f"{args.point} is not a point of {print_space(rho.K)}")
    print(dumps(point_to_obj(sy.eval_surjection(rho, p))))


def cmd_verify(args):
    path = args.op_file or args.operator
    if path is None:
        raise CliError("an operator file is required")
    T = operator_from_obj(_read_json(path))
    checks = tuple(args.checks.split(",")) if args.checks else EMBEDDING_CHECKS
    bad = set(checks) - set(ALL_CHECKS)
    if bad:
        raise CliError(f"unknown checks {sorted(bad)}")
    cfg = TrialConfig(seed=args.seed, trials=args.trials, checks=checks)
    rep = run_checks(T, cfg)
    out = {"ok": rep.ok, "counts": rep.counts, "first_failure": repr(rep.first_failure)
           if rep.first_failure else None}
    if args.mutants:
        found = [mutant_detected(T, build, cfg) for _, build in mutants(T)]
        out["mutants"] = {"total": len(found), "detected": sum(found)}
    if args.json:
        print(dumps(out))
    else:
        print(rep.summary())
        if args.mutants:
            print(f"mutants detected: {out['mutants']['detected']}/{out['mutants']['total']}")
    ok = rep.ok and (not args.mutants or all(found))
    return 0 if ok else 1


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--assume-ch", action="store_true", help="assume the continuum hypothesis")

    p = _Parser(prog="ckembed", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name, fn, help_):
        q = sub.add_parser(name, parents=[common], help=help_)
        q.set_defaults(fn=fn)
        return q

    verb("height", cmd_height, "Cantor-Bendixson height").add_argument("space")
    q = verb("derive", cmd_derive, "derived set of a given order")
    q.add_argument("space")
    q.add_argument("order")
    verb("kernel", cmd_kernel, "perfect kernel").add_argument("space")
    verb("msnf", cmd_msnf, "Mazurkiewicz-Sierpinski normal form").add_argument("space")
    verb("szlenk", cmd_szlenk, "Szlenk index of C(K)").add_argument("space")
    q = verb("cellularity", cmd_cellularity, "relative cellularity with witnesses")
    q.add_argument("space")
    q.add_argument("order")
    q.add_argument("--cap", type=int, default=8)

    q = verb("embeds", cmd_embeds, "does C(L) embed into C(K)?")
    mode = q.add_mutually_exclusive_group(required=True)
    mode.add_argument("--isometric", action="store_true")
    mode.add_argument("--isomorphic", action="store_true")
    q.add_argument("L")
    q.add_argument("K")
    q.add_argument("--certificate", help="write the certificate to this file")

    q = verb("conditions", cmd_conditions, "condition-by-condition checks")
    q.add_argument("L")
    q.add_argument("K")

    q = verb("synth", cmd_synth, "synthesize an operator or surjection")
    q.add_argument("space")
    q.add_argument("--kind", default="embedding",
                   choices=("embedding", "surjection", "onepoint", "cantor", "kernel"))
    q.add_argument("--alpha")
    q.add_argument("--m", type=int, default=1)
    q.add_argument("-o", "--output")

    q = verb("apply", cmd_apply, "apply a serialized operator to a function")
    q.add_argument("operator")
    q.add_argument("function")

    q = verb("surject-eval", cmd_surject_eval, "evaluate a serialized surjection at a point")
    q.add_argument("surjection")
    q.add_argument("point", help="JSON list of point steps")

    q = verb("verify", cmd_verify, "randomized exact checks of a serialized operator")
    q.add_argument("operator", nargs="?")
    q.add_argument("--op", dest="op_file", help="operator file (alternative to the positional)")
    q.add_argument("--seed", type=int, required=True)
    q.add_argument("--trials", type=int, default=100)
    q.add_argument("--checks", help="comma-separated subset of " + ",".join(ALL_CHECKS))
    q.add_argument("--mutants", action="store_true", help="also check that corruptions are caught")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code = args.fn(args)
    except (CliError, SpaceSyntaxError, OrdinalError, SpaceError, NotMetrizable,
            sy.SynthesisError, fc.SpaceMismatch, OSError, ValueError, KeyError) as e:
        msg = f"{type(e).__name__}: {e}"
        if args.json:
            print(dumps({"error": msg}))
        else:
            print(f"error: {msg}", file=sys.stderr)
        return 3
    return 0 if code is None else code


if __name__ == "__main__":
    sys.exit(main())
