"""Translations between the PM (±-probability) and Four (4-probability) logics.

* :func:`nnf` pushes outer paraconsistent negation into ``Pr`` atoms.
* :func:`to_four` maps a ``-``-free PM formula into the Four dialect.
* :func:`to_pm` maps a Four formula into the PM dialect.

Every translation is a sequence of local rewrites applied outermost-first
(leftmost redex in pre-order) until no rule applies; the sequence is kept in
a :class:`TranslationTrace` so it can be replayed and audited.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .errors import DialectError
from .syntax import (And, Conj, Delta, Dialect, Disj, Iff, Implies, LukNeg, Minus, ModalAtom, Neg,
                     OuterFormula, Or, ParNeg, Plus, Strong, _Binary, _Unary, check_dialect,
                     render, walk)

Rule = Callable[[OuterFormula], Optional[OuterFormula]]


@dataclass(frozen=True)
class Step:
    rule: str
    position: tuple[int, ...]


@dataclass(frozen=True)
class TranslationTrace:
    input: OuterFormula
    output: OuterFormula
    steps: tuple[Step, ...]
    rules: str

    def replay(self) -> OuterFormula:
        table = RULESETS[self.rules]
        f = self.input
        for step in self.steps:
            node = _get(f, step.position)
            new = table[step.rule](node)
            if new is None:
                raise ValueError(f"rule {step.rule} does not apply at {step.position}")
            f = _replace(f, step.position, new)
        return f


def _get(f: OuterFormula, path: tuple[int, ...]) -> OuterFormula:
    for i in path:
        f = f.arg if isinstance(f, _Unary) else (f.left, f.right)[i]
    return f


def _replace(f: OuterFormula, path: tuple[int, ...], new: OuterFormula) -> OuterFormula:
    if not path:
        return new
    head, rest = path[0], path[1:]
    if isinstance(f, _Unary):
        return type(f)(_replace(f.arg, rest, new))
    if head == 0:
        return type(f)(_replace(f.left, rest, new), f.right)
    return type(f)(f.left, _replace(f.right, rest, new))


def _first_redex(f: OuterFormula, rules: dict[str, Rule], path=()):
    for name, rule in rules.items():
        out = rule(f)
        if out is not None:
            return name, path, out
    if isinstance(f, _Unary):
        return _first_redex(f.arg, rules, path + (0,))
    if isinstance(f, _Binary):
        return (_first_redex(f.left, rules, path + (0,))
                or _first_redex(f.right, rules, path + (1,)))
    return None


def rewrite(f: OuterFormula, rules: str) -> TranslationTrace:
    table = RULESETS[rules]
    steps = []
    current = f
    while True:
        hit = _first_redex(current, table)
        if hit is None:
            return TranslationTrace(f, current, tuple(steps), rules)
        name, path, new = hit
        steps.append(Step(name, path))
        current = _replace(current, path, new)


# -- negation normal form ------------------------------------------------------------------

def _under_parneg(cls):
    def deco(fn):
        def rule(f):
            if isinstance(f, ParNeg) and isinstance(f.arg, cls):
                return fn(f.arg)
            return None
        return rule
    return deco


@_under_parneg(ModalAtom)
def _neg_atom(a):
    return ModalAtom(a.modality, Neg(a.body)) if a.modality == "Pr" else None


@_under_parneg(ParNeg)
def _neg_neg(a):
    return a.arg


@_under_parneg(LukNeg)
def _neg_lukneg(a):
    return LukNeg(ParNeg(a.arg))


@_under_parneg(Implies)
def _neg_imp(a):
    return LukNeg(Implies(ParNeg(a.right), ParNeg(a.left)))


@_under_parneg(Delta)
def _neg_delta(a):
    return LukNeg(Delta(LukNeg(ParNeg(a.arg))))


# Duals for the derived connectives; each is value-preserving in the paired
# semantics and avoids duplicating subformulas.
@_under_parneg(Disj)
def _neg_disj(a):
    return Conj(ParNeg(a.left), ParNeg(a.right))


@_under_parneg(Conj)
def _neg_conj(a):
    return Disj(ParNeg(a.left), ParNeg(a.right))


@_under_parneg(Plus)
def _neg_plus(a):
    return Strong(ParNeg(a.left), ParNeg(a.right))


@_under_parneg(Strong)
def _neg_strong(a):
    return Plus(ParNeg(a.left), ParNeg(a.right))


@_under_parneg(Minus)
def _neg_minus(a):
    return Plus(ParNeg(a.left), LukNeg(ParNeg(a.right)))


@_under_parneg(Iff)
def _neg_iff(a):
    return LukNeg(Iff(ParNeg(a.left), ParNeg(a.right)))


NNF_RULES: dict[str, Rule] = {
    "neg-pr": _neg_atom, "neg-neg": _neg_neg, "neg-lukneg": _neg_lukneg,
    "neg-imp": _neg_imp, "neg-delta": _neg_delta,
    "neg-or": _neg_disj, "neg-and": _neg_conj, "neg-plus": _neg_plus,
    "neg-strong": _neg_strong, "neg-minus": _neg_minus, "neg-iff": _neg_iff,
}


def nnf_trace(alpha: OuterFormula) -> TranslationTrace:
    check_dialect(alpha, Dialect.PM)
    return rewrite(alpha, "nnf")


def nnf(alpha: OuterFormula) -> OuterFormula:
    """Equivalent PM formula with paraconsistent negation only inside ``Pr`` bodies."""
    return nnf_trace(alpha).output


# -- PM <-> Four ------------------------------------------------------------------------------

def _pr_to_four(f):
    if isinstance(f, ModalAtom) and f.modality == "Pr":
        return Plus(ModalAtom("Bl", f.body), ModalAtom("Cf", f.body))
    return None


def _four_rule(modality: str, build):
    def rule(f):
        if isinstance(f, ModalAtom) and f.modality == modality:
            return build(f.body)
        return None
    return rule


def _contradiction(body):
    return And(body, Neg(body))


TO_PM_RULES: dict[str, Rule] = {
    "bl-pm": _four_rule("Bl", lambda b: Minus(ModalAtom("Pr", b), ModalAtom("Pr", _contradiction(b)))),
    "db-pm": _four_rule("Db", lambda b: Minus(ModalAtom("Pr", Neg(b)), ModalAtom("Pr", _contradiction(b)))),
    "cf-pm": _four_rule("Cf", lambda b: ModalAtom("Pr", _contradiction(b))),
    "uc-pm": _four_rule("Uc", lambda b: LukNeg(ModalAtom("Pr", Or(b, Neg(b))))),
}

RULESETS: dict[str, dict[str, Rule]] = {
    "nnf": NNF_RULES,
    "four": {"pr-four": _pr_to_four},
    "pm": TO_PM_RULES,
}


def to_four_trace(alpha: OuterFormula) -> TranslationTrace:
    check_dialect(alpha, Dialect.PM)
    for node in walk(alpha):
        if isinstance(node, ParNeg):
            raise DialectError(f"to_four needs a --free formula; found {render(node)} (run nnf first)", node)
    return rewrite(alpha, "four")


def to_four(alpha: OuterFormula) -> OuterFormula:
    """Replace every ``Pr f`` with ``Bl f (+) Cf f``."""
    return to_four_trace(alpha).output


def to_pm_trace(beta: OuterFormula) -> TranslationTrace:
    check_dialect(beta, Dialect.FOUR)
    return rewrite(beta, "pm")


def to_pm(beta: OuterFormula) -> OuterFormula:
    """Replace each Four modality by its ``Pr`` definition."""
    return to_pm_trace(beta).output


def pm_to_four(alpha: OuterFormula) -> OuterFormula:
    return to_four(nnf(alpha))
