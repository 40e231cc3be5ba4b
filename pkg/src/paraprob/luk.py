"""Łukasiewicz-with-Delta algebra, its paired (truth, falsity) twin, and
evaluation of two-layered formulas over weighted BD models.

All arithmetic is exact (:class:`fractions.Fraction`).  Measures are given
canonically as world weights; :class:`SetMeasureTable` lets the axiom
verifiers audit arbitrary set functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Mapping, NamedTuple

from .bd import BDModel, ExtensionKind, bd_entails, dual_model, extension, extensions  # noqa: F401
from .errors import DialectError, ModelError
from .syntax import (And, Atom, BDFormula, Delta, Dialect, LukNeg, ModalAtom, Neg,
                     OuterFormula, Or, ParNeg, check_dialect, render)

ZERO = Fraction(0)
ONE = Fraction(1)

WorldWeights = Mapping[str, Fraction]
SetMeasureTable = Mapping[frozenset, Fraction]


# -- the standard algebra on [0, 1] ------------------------------------------------

def l_neg(a):
    return 1 - a


def l_delta(a):
    return ONE if a == 1 else ZERO


def l_imp(a, b):
    return min(ONE, 1 - a + b)


def l_min(a, b):
    return min(a, b)


def l_max(a, b):
    return max(a, b)


def l_strong(a, b):
    return max(ZERO, a + b - 1)


def l_plus(a, b):
    return min(ONE, a + b)


def l_minus(a, b):
    return max(ZERO, a - b)


def l_iff(a, b):
    return l_strong(l_imp(a, b), l_imp(b, a))


LUK_OPS: dict[str, Callable] = {
    "~": l_neg, "!": l_delta, "->": l_imp, "&": l_min, "|": l_max,
    "(*)": l_strong, "(+)": l_plus, "(-)": l_minus, "<->": l_iff,
}


def luk_apply(op: str, *args) -> Fraction:
    """Apply a connective (named by its ASCII symbol) in the standard algebra."""
    return Fraction(LUK_OPS[op](*map(Fraction, args)))


# -- paired semantics ------------------------------------------------------------------

class PairValue(NamedTuple):
    truth: Fraction
    falsity: Fraction

    def __str__(self):
        return f"({self.truth}, {self.falsity})"


def _p(v) -> PairValue:
    return PairValue(Fraction(v[0]), Fraction(v[1]))


def p_parneg(a: PairValue) -> PairValue:
    return PairValue(a.falsity, a.truth)


def p_lukneg(a: PairValue) -> PairValue:
    return PairValue(l_neg(a.truth), l_neg(a.falsity))


def p_delta(a: PairValue) -> PairValue:
    return PairValue(l_delta(a.truth), l_neg(l_delta(l_neg(a.falsity))))


def p_imp(a: PairValue, b: PairValue) -> PairValue:
    return PairValue(l_imp(a.truth, b.truth), l_minus(b.falsity, a.falsity))


# Derived connectives, literally by their defining identities.
def p_or(a, b):
    return p_imp(p_imp(a, b), b)


def p_and(a, b):
    return p_lukneg(p_or(p_lukneg(a), p_lukneg(b)))


def p_plus(a, b):
    return p_imp(p_lukneg(a), b)


def p_strong(a, b):
    return p_lukneg(p_imp(a, p_lukneg(b)))


def p_minus(a, b):
    return p_strong(a, p_lukneg(b))


def p_iff(a, b):
    return p_strong(p_imp(a, b), p_imp(b, a))


PAIR_OPS: dict[str, Callable] = {
    "-": p_parneg, "~": p_lukneg, "!": p_delta, "->": p_imp, "&": p_and, "|": p_or,
    "(*)": p_strong, "(+)": p_plus, "(-)": p_minus, "<->": p_iff,
}


def pair_apply(op: str, *args) -> PairValue:
    return PAIR_OPS[op](*map(_p, args))


# -- generic evaluation with atom callbacks ------------------------------------------------

def evaluate_pair(f: OuterFormula, atom_value: Callable[[OuterFormula], PairValue]) -> PairValue:
    if isinstance(f, (ModalAtom, Atom)):
        return _p(atom_value(f))
    if isinstance(f, (ParNeg, LukNeg, Delta)):
        return PAIR_OPS[f.symbol](evaluate_pair(f.arg, atom_value))
    return PAIR_OPS[f.symbol](evaluate_pair(f.left, atom_value), evaluate_pair(f.right, atom_value))


def evaluate_luk(f: OuterFormula, atom_value: Callable[[OuterFormula], Fraction]) -> Fraction:
    if isinstance(f, (ModalAtom, Atom)):
        return Fraction(atom_value(f))
    if isinstance(f, ParNeg):
        raise DialectError("paraconsistent negation has no single-valued semantics", f)
    if isinstance(f, (LukNeg, Delta)):
        return LUK_OPS[f.symbol](evaluate_luk(f.arg, atom_value))
    return LUK_OPS[f.symbol](evaluate_luk(f.left, atom_value), evaluate_luk(f.right, atom_value))


# -- measured models ---------------------------------------------------------------------------

def check_weights(model: BDModel, weights: WorldWeights) -> None:
    if set(weights) != set(model.worlds):
        raise ModelError("weights must be given for exactly the model's worlds")
    if any(Fraction(v) < 0 for v in weights.values()):
        raise ModelError("negative weight")
    if sum(Fraction(v) for v in weights.values()) != 1:
        raise ModelError("weights must sum to 1")


def measure_of(model: BDModel, weights: WorldWeights, f: BDFormula, kind) -> Fraction:
    """Weight of the ``kind`` extension of ``f``."""
    check_weights(model, weights)
    return _measure(model, weights, f, ExtensionKind(kind))


def _measure(model, weights, f, kind: ExtensionKind) -> Fraction:
    return sum((Fraction(weights[w]) for w in extension(model, f, kind)), ZERO)


_FOUR_KIND = {"Bl": ExtensionKind.B, "Db": ExtensionKind.D, "Cf": ExtensionKind.C, "Uc": ExtensionKind.U}


def eval_pm(model: BDModel, weights: WorldWeights, alpha: OuterFormula) -> PairValue:
    """Value of a PM formula: ``Pr f`` is (weight of |f|+, weight of |f|-)."""
    check_dialect(alpha, Dialect.PM)
    check_weights(model, weights)

    def atom(a: ModalAtom) -> PairValue:
        return PairValue(_measure(model, weights, a.body, ExtensionKind.PLUS),
                         _measure(model, weights, a.body, ExtensionKind.MINUS))

    return evaluate_pair(alpha, atom)


def eval_four(model: BDModel, weights: WorldWeights, beta: OuterFormula) -> Fraction:
    """Value of a Four formula: ``Bl/Db/Cf/Uc f`` weigh the b/d/c/u extension of ``f``."""
    check_dialect(beta, Dialect.FOUR)
    check_weights(model, weights)
    return evaluate_luk(beta, lambda a: _measure(model, weights, a.body, _FOUR_KIND[a.modality]))


# -- axiom verifiers -------------------------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    axiom: str
    formulas: tuple
    detail: str

    def __str__(self):
        names = ", ".join(render(f) for f in self.formulas)
        return f"{self.axiom}[{names}]: {self.detail}"


class MissingEntry(ModelError):
    pass


def induced_table(model: BDModel, weights: WorldWeights, sets: Iterable[frozenset] | None = None) -> dict:
    """Classical measure as an explicit table (all subsets of W when ``sets`` is None)."""
    check_weights(model, weights)
    if sets is None:
        ws = model.worlds
        if len(ws) > 16:
            raise ModelError("refusing to tabulate more than 2^16 subsets")
        sets = (frozenset(c) for r in range(len(ws) + 1) for c in combinations(ws, r))
    return {s: sum((Fraction(weights[w]) for w in s), ZERO) for s in sets}


def _lookup(table: SetMeasureTable, s: frozenset) -> Fraction:
    try:
        return table[s]
    except KeyError:
        raise MissingEntry(f"measure table has no entry for {sorted(s)}") from None


def _dedupe(probe: Iterable[BDFormula]) -> list[BDFormula]:
    return list(dict.fromkeys(probe))


def verify_pm_axioms(model: BDModel, table: SetMeasureTable, probe: Iterable[BDFormula]) -> list[Violation]:
    """Audit a ±-probability table: monotonicity, negation and exclusion instances."""
    probe = _dedupe(probe)
    out: list[Violation] = []
    mu = lambda s: _lookup(table, s)  # noqa: E731
    plus = {f: extensions(model, f)[0] for f in probe}
    minus = {f: extensions(model, f)[1] for f in probe}

    for f in probe:
        neg_plus = extensions(model, Neg(f))[0]
        if mu(minus[f]) != mu(neg_plus):
            out.append(Violation("neg", (f,), f"mu(|f|-)={mu(minus[f])} != mu(|-f|+)={mu(neg_plus)}"))

    needed = set(plus.values()) | set(minus.values())
    for f, g in ((f, g) for f in probe for g in probe):
        disj = plus[f] | plus[g]
        conj = plus[f] & plus[g]
        needed.update((disj, conj))
        lhs = mu(disj)
        rhs = mu(plus[f]) + mu(plus[g]) - mu(conj)
        if lhs != rhs:
            out.append(Violation("ex", (f, g), f"mu(|f|g|+)={lhs} != {rhs}"))

    ordered = sorted(needed, key=lambda s: (len(s), sorted(s)))
    for x in ordered:
        mx = mu(x)
        for y in ordered:
            if x < y and mx > mu(y):
                out.append(Violation("mon", (), f"mu({sorted(x)})={mx} > mu({sorted(y)})={mu(y)}"))
    return out


def verify_four_axioms(model: BDModel, table: SetMeasureTable, probe: Iterable[BDFormula]) -> list[Violation]:
    """Audit a 4-probability table: part, neg, contr, BCmon and BCex instances.

    BCmon is only instantiated for pairs with ``f |=BD g``.
    """
    probe = _dedupe(probe)
    out: list[Violation] = []
    mu = lambda s: _lookup(table, s)  # noqa: E731

    def m(f, kind):
        return mu(extension(model, f, kind))

    B, D, C, U = ExtensionKind.B, ExtensionKind.D, ExtensionKind.C, ExtensionKind.U
    for f in probe:
        total = m(f, B) + m(f, D) + m(f, C) + m(f, U)
        if total != 1:
            out.append(Violation("part", (f,), f"parts sum to {total}"))
        if m(Neg(f), B) != m(f, D):
            out.append(Violation("neg", (f,), "mu(|-f|b) != mu(|f|d)"))
        if m(Neg(f), C) != m(f, C):
            out.append(Violation("neg", (f,), "mu(|-f|c) != mu(|f|c)"))
        contra = And(f, Neg(f))
        if m(contra, B) != 0:
            out.append(Violation("contr", (f,), f"mu(|f&-f|b)={m(contra, B)}"))
        if m(contra, C) != m(f, C):
            out.append(Violation("contr", (f,), "mu(|f&-f|c) != mu(|f|c)"))

    def bc(f):
        return m(f, B) + m(f, C)

    for f in probe:
        for g in probe:
            if bd_entails(f, g) and bc(f) > bc(g):
                out.append(Violation("BCmon", (f, g), f"{bc(f)} > {bc(g)}"))
            lhs = bc(f) + bc(g)
            rhs = bc(And(f, g)) + bc(Or(f, g))
            if lhs != rhs:
                out.append(Violation("BCex", (f, g), f"{lhs} != {rhs}"))
    return out
