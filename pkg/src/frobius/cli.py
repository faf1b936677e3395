"""Command-line front end: ``frobius <command> [options]``.

Exit codes: 0 on success (equal, sound), 1 on a semantic inequality or a rule
failure, 2 on usage, parse or model-construction errors.
"""

from __future__ import annotations

import argparse
import sys

from .abelian import AbelianGroup, GroupError, characters, has_enough_characters
from .diagram import Diagram, DiagramError, TheorySignature, dump_graph, parse_graph, to_dot
from .field import FieldError, parse_field
from .linalg import scalar_multiple_of
from .model import (
    ModelError,
    Normalization,
    build_model,
    check_rule_soundness,
    coprimality_check,
    enough_setlike,
    evaluate,
    internal_integer_matrix,
    no_distributive_law_witness,
    parse_model,
    predicted_scalar,
    ring_ops,
)
from .model.witness import BudgetExceeded
from .rewrite import RuleError, builtin_ruleset, normalize_spiders, simplify, strip_scalars
from .rewrite.yang_baxter import YBLaws, check_yang_baxter, corrupted_copy_phase
from .terms import TermSyntaxError, parse_term, print_term

DEFAULT_MODEL = "Z3"


class UsageError(Exception):
    pass


def _read_input(text: str | None, sig: TheorySignature, graph_file: str | None = None) -> Diagram:
    if graph_file:
        with open(graph_file, encoding="utf-8") as fh:
            return parse_graph(fh.read(), sig)
    if text is None or text == "-":
        text = sys.stdin.read()
    return parse_term(text.strip(), sig)


def _signature(args) -> TheorySignature:
    if getattr(args, "model", None):
        return _model(args).signature
    return TheorySignature()


_model_cache: dict = {}


def _model(args):
    desc = args.model or DEFAULT_MODEL
    if desc not in _model_cache:
        _model_cache[desc] = parse_model(desc)
    return _model_cache[desc]


def _emit(d: Diagram, fmt: str) -> str:
    if fmt == "graph":
        return dump_graph(d).rstrip("\n")
    if fmt == "dot":
        return to_dot(d).rstrip("\n")
    return print_term(d)


# -- commands ------------------------------------------------------------------------------------


def cmd_normalize(args) -> int:
    sig = _signature(args)
    d = _read_input(args.term, sig, args.in_graph)
    if args.ruleset:
        rs = builtin_ruleset(args.ruleset, sig)
        res = simplify(d, rs, args.max_steps)
        if args.trace:
            for step in res.trace:
                print(step.line())
        out = res.diagram
        if res.exhausted:
            print(f"note: step budget of {args.max_steps} exhausted", file=sys.stderr)
    else:
        out = normalize_spiders(d)
    if args.hide_scalars:
        out = strip_scalars(out)
    print(_emit(out, args.format))
    return 0


def cmd_eval(args) -> int:
    model = _model(args)
    d = _read_input(args.term, model.signature, args.in_graph)
    M = evaluate(d, model)
    print(M.dump() if args.format == "dump" else M.pretty())
    return 0


def cmd_equiv(args) -> int:
    model = _model(args)
    sig = model.signature
    a = _read_input(args.left, sig, args.in_graph)
    b = parse_term(args.right, sig)
    if a.arity != b.arity:
        raise UsageError(f"arity mismatch: {a.arity[0]}->{a.arity[1]} vs {b.arity[0]}->{b.arity[1]}")
    ma, mb = evaluate(a, model), evaluate(b, model)
    if ma == mb:
        print("EQUAL exact")
        return 0
    c = scalar_multiple_of(ma, mb)
    if c is None or c.is_zero():
        print("UNEQUAL")
        return 1
    if args.mode == "scalar":
        print(f"EQUAL scalar {c}")
        return 0
    print(f"UNEQUAL scalar {c}")
    return 1


def cmd_check_rules(args) -> int:
    model = _model(args)
    rs = builtin_ruleset(args.ruleset or "IF", model.signature)
    bad = 0
    counts = {"exact": 0, "scalar": 0, "FAIL": 0}
    for rule, rep in zip(rs.rules, check_rule_soundness(rs, model)):
        counts[rep.status] += 1
        line = rep.line()
        if rep.status == "FAIL":
            bad += 1
        elif rep.status == "scalar" and rep.scalar != predicted_scalar(rule, model):
            line += " unexpected"
            bad += 1
        print(line)
    print(f"summary {counts['exact']} exact, {counts['scalar']} scalar, {counts['FAIL']} FAIL")
    return 1 if bad else 0


def cmd_characters(args) -> int:
    G = AbelianGroup.parse(args.group)
    F = parse_field(args.field)
    els = G.elements()
    for chi in characters(G, F):
        values = " ".join(F.format(chi.value(g)) for g in els)
        print(f"{chi} : {values}")
    if args.summary:
        print(f"enough {str(has_enough_characters(G, F)).lower()}")
    return 0


def cmd_intring(args) -> int:
    model = _model(args)
    for n in args.n:
        print(f"int({n})")
        print(internal_integer_matrix(model, n).pretty())
    if args.sum is not None:
        a, b = args.sum
        ops = ring_ops(model, a, b)
        ok = ops.sum_matrix == internal_integer_matrix(model, a + b)
        print(f"sum {a} {b} {'matches' if ok else 'differs from'} int({a + b})")
    if args.product is not None:
        a, b = args.product
        ops = ring_ops(model, a, b)
        ok = ops.product_matrix == internal_integer_matrix(model, a * b)
        print(f"product {a} {b} {'matches' if ok else 'differs from'} int({a * b})")
    if args.coprimality is not None:
        r = coprimality_check(model, args.coprimality)
        flags = (r.coprime, r.red_comonoid_commutes, r.green_monoid_commutes)
        print("coprime={} red_comonoid={} green_monoid={}".format(*(str(x).lower() for x in flags)))
        if not r.consistent:
            return 1
    return 0


def cmd_yang_baxter(args) -> int:
    model = _model(args)
    laws = YBLaws(copy_phase=corrupted_copy_phase) if args.corrupt else YBLaws()
    rep = check_yang_baxter(model, laws, args.max_arity)
    for f in rep.failures:
        print(f"FAIL {f.describe()}")
    print(f"checked {rep.checked} triples, {len(rep.failures)} failures")
    return 0 if rep.ok else 1


def cmd_witness(args) -> int:
    model = _model(args)
    sig = model.signature
    g1s = [sig.green.parse_element(args.g1)] if args.g1 is not None else sig.green.elements()
    h1s = [sig.red.parse_element(args.h1)] if args.h1 is not None else sig.red.elements()
    for g1 in g1s:
        for h1 in h1s:
            w = no_distributive_law_witness(model, g1, h1, args.depth)
            if w is None:
                print(f"g1={g1} h1={h1} absent")
            else:
                print(f"g1={g1} h1={h1} present {w.describe()}")
    return 0


def cmd_enough_setlike(args) -> int:
    if args.group:
        G = AbelianGroup.parse(args.group)
        F = parse_field(args.field) if args.field else None
        model = build_model(G, F, Normalization.INTEGRAL)
    else:
        model = _model(args)
    print(str(enough_setlike(model)).lower())
    return 0


# -- argument parsing ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="frobius", description="Interacting Frobenius algebra diagrams.")
    sub = p.add_subparsers(dest="command", required=True)

    def model_flag(sp):
        sp.add_argument("--model", help=f"model descriptor such as Z3@cyclo(12)/unitary (default {DEFAULT_MODEL})")

    sp = sub.add_parser("normalize", help="spider-normalize or simplify a term")
    sp.add_argument("term", nargs="?", help="term text ('-' or omitted reads standard input)")
    model_flag(sp)
    sp.add_argument("--ruleset", help="simplify with a built-in rule set (M, C, F, FG, FG_plus_FH, IF, IFK, COLLAPSE(d))")
    sp.add_argument("--max-steps", type=int, default=200)
    sp.add_argument("--format", choices=["term", "graph", "dot"], default="term")
    sp.add_argument("--in-graph", help="read the diagram from a graph dump file")
    sp.add_argument("--trace", action="store_true", help="print the rewrite trace")
    sp.add_argument("--hide-scalars", action="store_true", help="drop closed components and divisors")
    sp.set_defaults(func=cmd_normalize)

    sp = sub.add_parser("eval", help="evaluate a term in a model")
    sp.add_argument("term", nargs="?")
    model_flag(sp)
    sp.add_argument("--format", choices=["matrix", "dump"], default="matrix")
    sp.add_argument("--in-graph")
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("equiv", help="compare two terms semantically")
    sp.add_argument("left", nargs="?")
    sp.add_argument("right")
    model_flag(sp)
    sp.add_argument("--mode", choices=["exact", "scalar"], default="exact")
    sp.add_argument("--in-graph", help="read the left diagram from a graph dump file")
    sp.set_defaults(func=cmd_equiv)

    sp = sub.add_parser("check-rules", help="certify a rule set in a model")
    model_flag(sp)
    sp.add_argument("--ruleset", default="IF")
    sp.set_defaults(func=cmd_check_rules)

    sp = sub.add_parser("characters", help="list the characters of a group over a field")
    sp.add_argument("--group", required=True)
    sp.add_argument("--field", required=True)
    sp.add_argument("--summary", action="store_true", help="also report whether there are enough characters")
    sp.set_defaults(func=cmd_characters)

    sp = sub.add_parser("intring", help="internal integers of a model")
    sp.add_argument("n", type=int, nargs="*")
    model_flag(sp)
    sp.add_argument("--sum", type=int, nargs=2, metavar=("A", "B"))
    sp.add_argument("--product", type=int, nargs=2, metavar=("A", "B"))
    sp.add_argument("--coprimality", type=int, metavar="N")
    sp.set_defaults(func=cmd_intring)

    sp = sub.add_parser("yang-baxter", help="check the Yang-Baxter hexagon of the phase laws")
    model_flag(sp)
    sp.add_argument("--max-arity", type=int, default=2)
    sp.add_argument("--corrupt", action="store_true", help="use a deliberately wrong copy/phase law")
    sp.set_defaults(func=cmd_yang_baxter)

    sp = sub.add_parser("witness-no-distlaw", help="search for reversed factorizations of g1;h1")
    model_flag(sp)
    sp.add_argument("--g1", help="green phase (default: all)")
    sp.add_argument("--h1", help="red phase (default: all)")
    sp.add_argument("--depth", type=int, default=1)
    sp.set_defaults(func=cmd_witness)

    sp = sub.add_parser("enough-setlike", help="do the red set-like points span the space?")
    model_flag(sp)
    sp.add_argument("--group")
    sp.add_argument("--field")
    sp.set_defaults(func=cmd_enough_setlike)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "max_steps", 0) < 0:
        parser.error("--max-steps must be non-negative")
    try:
        return args.func(args)
    except TermSyntaxError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
    except (UsageError, ModelError, GroupError, FieldError, RuleError, DiagramError, BudgetExceeded, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
