"""Command-line interface.

Exit codes: 0 valid/sat/accepted/true, 1 invalid/unsat/rejected/false,
2 input error, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from .bd import bd_entails, bd_equiv
from .decision import (DEFAULT_MAX_VARS, Invalid, Sat, Valid, decide_entails_four, decide_sat_four,
                       decide_sat_pm, decide_valid_four, decide_valid_pm)
from .embeddings import nnf, pm_to_four, to_pm
from .errors import InputError, ResourceLimit
from .hilbert import check_proof, generate_instances, parse_proof
from .luk import eval_four, eval_pm
from .modelfile import dump_model, parse_model
from .syntax import Dialect, parse_bd, parse_outer, render
from .tableau import DEFAULT_BUDGET, Closed, dump_tree, prove_luk_valid, refutation_root, saturate_tree

GOLDEN_MODEL = """\
world w0 { +p -p }
world w1 { -p -q }
weight w0 2/3
weight w1 1/3
"""

GOLDEN_VALUES = [
    ("pm", "Pr{p | q}", "(2/3, 1/3)"),
    ("pm", "Pr{p}", "(2/3, 1)"),
    ("four", "Bl{p | q}", "2/3"),
    ("four", "Db{p | q}", "1/3"),
    ("four", "Cf{p | q}", "0"),
    ("four", "Uc{p | q}", "0"),
    ("four", "Bl{p}", "0"),
    ("four", "Uc{p}", "0"),
    ("four", "Cf{p}", "2/3"),
    ("four", "Db{p}", "1/3"),
]

VARIABLE_NAMES = "pqrstuvw"


def _load_model(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read model file: {exc}") from None
    model, weights = parse_model(text)
    if weights is None:
        raise InputError("model file has no weights")
    return model, weights


def evaluate(logic: str, model, weights, formula: str) -> str:
    if logic == "pm":
        return str(eval_pm(model, weights, parse_outer(formula, Dialect.PM)))
    return str(Fraction(eval_four(model, weights, parse_outer(formula, Dialect.FOUR))))


def cmd_parse(args) -> int:
    if args.dialect == "bd":
        print(render(parse_bd(args.formula)))
    else:
        print(render(parse_outer(args.formula, args.dialect)))
    return 0


def cmd_bd(args) -> int:
    f, g = parse_bd(args.f), parse_bd(args.g)
    ok = bd_entails(f, g) if args.relation == "entails" else bd_equiv(f, g)
    print("YES" if ok else "NO")
    return 0 if ok else 1


def cmd_eval(args) -> int:
    model, weights = _load_model(args.model)
    print(evaluate(args.logic, model, weights, args.formula))
    return 0


def _decide(args, mode: str):
    caps = dict(max_vars=args.max_vars, budget=args.max_branches)
    if args.logic == "pm":
        if args.premise:
            raise InputError("--premise is only supported with --logic four")
        alpha = parse_outer(args.formula, Dialect.PM)
        if mode == "valid":
            return decide_valid_pm(alpha, **caps)
        return decide_sat_pm(alpha, require_e2_zero=args.require_e2_zero, **caps)
    if args.require_e2_zero:
        raise InputError("--require-e2-zero only applies to --logic pm")
    beta = parse_outer(args.formula, Dialect.FOUR)
    if mode == "valid":
        if args.premise:
            premises = [parse_outer(p, Dialect.FOUR) for p in args.premise]
            return decide_entails_four(premises, beta, route=args.route, **caps)
        return decide_valid_four(beta, route=args.route, **caps)
    if args.premise:
        raise InputError("--premise is only supported with valid")
    return decide_sat_four(beta, route=args.route, **caps)


def cmd_decide(args) -> int:
    verdict = _decide(args, args.command)
    names = {Valid: "VALID", Invalid: "INVALID", Sat: "SAT"}
    print(names.get(type(verdict), "UNSAT"))
    if isinstance(verdict, (Invalid, Sat)):
        print(f"value: {verdict.value}")
        text = dump_model(verdict.model, verdict.weights)
        if args.witness:
            Path(args.witness).write_text(text)
        else:
            sys.stdout.write(text)
    return 0 if verdict.positive else 1


def cmd_translate(args) -> int:
    if args.to == "pm":
        out = to_pm(parse_outer(args.formula, Dialect.FOUR))
    else:
        alpha = parse_outer(args.formula, Dialect.PM)
        out = nnf(alpha) if args.to == "nnf" else pm_to_four(alpha)
    print(render(out))
    return 0


def cmd_tableau(args) -> int:
    phi = parse_outer(args.formula, Dialect.LUK)
    if args.dump:
        tree = saturate_tree(refutation_root(phi), budget=args.max_branches)
        print(dump_tree(tree))
    result = prove_luk_valid(phi, budget=args.max_branches)
    if isinstance(result, Closed):
        print("CLOSED")
        return 0
    print("OPEN")
    for name in sorted(result.assignment):
        print(f"{name} = {result.assignment[name]}")
    return 1


def cmd_axioms(args) -> int:
    if not 1 <= args.vars <= len(VARIABLE_NAMES):
        raise InputError(f"--vars must be between 1 and {len(VARIABLE_NAMES)}")
    instances = generate_instances(VARIABLE_NAMES[:args.vars], args.depth, cap=args.cap)
    failures = 0
    for inst in instances:
        line = f"{inst.schema.value}({', '.join(render(a) for a in inst.args)}): {render(inst.formula)}"
        if args.check:
            ok = isinstance(decide_valid_four(inst.formula, max_vars=args.max_vars,
                                              budget=args.max_branches), Valid)
            failures += not ok
            line += " ; ok" if ok else " ; FAIL"
        print(line)
    if args.check:
        print(f"{len(instances)} instances, {failures} failures")
    return 1 if failures else 0


def cmd_proof(args) -> int:
    try:
        text = Path(args.file).read_text()
    except OSError as exc:
        raise InputError(f"cannot read proof file: {exc}") from None
    proof = parse_proof(text)
    result = check_proof(proof.premises, proof.lines, proof.goal)
    if result.ok:
        print("ACCEPTED")
        return 0
    where = f"line {result.failing_line}: " if result.failing_line else ""
    print(f"REJECTED {where}{result.reason}")
    return 1


def cmd_selftest(args) -> int:
    model, weights = parse_model(GOLDEN_MODEL)
    failures = 0
    for logic, formula, expected in GOLDEN_VALUES:
        got = evaluate(logic, model, weights, formula)
        ok = got == expected
        failures += not ok
        print(f"{'PASS' if ok else 'FAIL'} {logic} {formula} = {got} (expected {expected})")
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    caps = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    caps.add_argument("--max-branches", type=int, default=DEFAULT_BUDGET,
                      help="tableau node budget (exit 3 when exceeded)")
    caps.add_argument("--max-vars", type=int, default=DEFAULT_MAX_VARS,
                      help="cap on variables enumerated by coherence systems")
    parser = argparse.ArgumentParser(prog="paraprob", description="Paraconsistent probabilistic logics toolkit",
                                     allow_abbrev=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", parents=[caps], allow_abbrev=False, help="echo the canonical rendering of a formula")
    p.add_argument("dialect", choices=["bd", "pm", "four", "luk"])
    p.add_argument("formula")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("bd", parents=[caps], allow_abbrev=False, help="BD entailment and equivalence")
    p.add_argument("relation", choices=["entails", "equiv"])
    p.add_argument("f")
    p.add_argument("g")
    p.set_defaults(func=cmd_bd)

    p = sub.add_parser("eval", parents=[caps], allow_abbrev=False, help="evaluate a formula on a weighted model")
    p.add_argument("--model", required=True)
    p.add_argument("--logic", choices=["pm", "four"], required=True)
    p.add_argument("formula")
    p.set_defaults(func=cmd_eval)

    for name in ("valid", "sat"):
        p = sub.add_parser(name, parents=[caps], allow_abbrev=False, help=f"decide {'validity' if name == 'valid' else 'satisfiability'}")
        p.add_argument("--logic", choices=["pm", "four"], required=True)
        p.add_argument("--require-e2-zero", action="store_true",
                       help="pm sat: also require falsity coordinate 0")
        p.add_argument("--route", choices=["embed", "direct"], default="embed",
                       help="four: decide through the PM embedding or directly")
        p.add_argument("--premise", action="append", default=[],
                       help="four valid: premise formula (repeatable)")
        p.add_argument("--witness", help="write the witness model to this file")
        p.add_argument("formula")
        p.set_defaults(func=cmd_decide)

    p = sub.add_parser("translate", parents=[caps], allow_abbrev=False, help="nnf, PM to Four, Four to PM")
    p.add_argument("--to", choices=["nnf", "four", "pm"], required=True)
    p.add_argument("formula")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("tableau", parents=[caps], allow_abbrev=False, help="run the constraint tableau on a formula")
    p.add_argument("--dump", action="store_true", help="print the full tableau tree")
    p.add_argument("formula")
    p.set_defaults(func=cmd_tableau)

    p = sub.add_parser("axioms", parents=[caps], allow_abbrev=False, help="list (and optionally check) axiom instances")
    p.add_argument("--vars", type=int, required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--cap", type=int, default=5000)
    p.add_argument("--check", action="store_true")
    p.set_defaults(func=cmd_axioms)

    p = sub.add_parser("proof", parents=[caps], allow_abbrev=False, help="check a Hilbert proof file")
    p.add_argument("action", choices=["check"])
    p.add_argument("file")
    p.set_defaults(func=cmd_proof)

    p = sub.add_parser("selftest", parents=[caps], allow_abbrev=False, help="run the built-in golden evaluation suite")
    p.set_defaults(func=cmd_selftest)
    return parser


def _option_strings(parser: argparse.ArgumentParser) -> set[str]:
    out = set()
    for action in parser._actions:
        out.update(action.option_strings)
        if isinstance(action, argparse._SubParsersAction):
            for sub in action.choices.values():
                out |= _option_strings(sub)
    return out


def _protect_formulas(argv: list[str], options: set[str]) -> list[str]:
    """Keep formulas such as ``-Pr{p}`` from being read as options.

    argparse treats any argument containing a space as positional, and
    formulas are whitespace-insensitive, so a leading space is enough.
    """
    out = []
    for arg in argv:
        if arg.startswith("-") and arg != "--" and arg.split("=", 1)[0] not in options:
            arg = " " + arg
        out.append(arg)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_protect_formulas(argv, _option_strings(parser)))
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimit as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
