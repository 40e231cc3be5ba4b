"""Hilbert calculus for the Four logic: axiom instances and a proof checker.

Proof files look like::

    premise !Cf{p}
    1. ~Bl{p & -p} ; axiom contr(p)
    2. ~Bl{p & -p} -> (Bl{q} -> ~Bl{p & -p}) ; taut
    3. Bl{q} -> ~Bl{p & -p} ; mp 1 2
    goal Bl{q} -> ~Bl{p & -p}

``mp i j`` takes the minor premise from line ``i`` and the implication from
line ``j``.  ``dnec i`` prefixes ``!`` to a line that does not depend on any
premise.  Without a ``goal`` line the last line is the goal.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from itertools import permutations, product
from typing import Iterable, Optional, Sequence, Union

from .bd import bd_entails, bd_equiv, truth_table
from .errors import InputError, ParseError, ResourceLimit
from .syntax import (FOUR_MODALITIES, And, BDFormula, Delta, Dialect, Iff, Implies, LukNeg, Minus,
                     ModalAtom, Neg, Or, OuterFormula, Plus, Var, check_dialect, parse_bd,
                     parse_outer, render)
from .tableau import Closed, prove_luk_valid


class Schema(Enum):
    LUK_TAUT = "taut"
    EQUIV = "equiv"
    CONTR = "contr"
    NEG = "neg"
    MON = "mon"
    PART1 = "part1"
    PART2 = "part2"
    EX = "ex"


ARITY = {Schema.EQUIV: 2, Schema.CONTR: 1, Schema.NEG: 1, Schema.MON: 2,
         Schema.PART1: 1, Schema.PART2: 1, Schema.EX: 2}
VARIANTS = {Schema.CONTR: 2, Schema.NEG: 2}


class SideConditionError(InputError):
    pass


def _m(modality: str, body: BDFormula) -> ModalAtom:
    return ModalAtom(modality, body)


def _bc(f: BDFormula) -> OuterFormula:
    return Plus(_m("Bl", f), _m("Cf", f))


def _sum(terms: Sequence[OuterFormula]) -> OuterFormula:
    out = terms[0]
    for t in terms[1:]:
        out = Plus(out, t)
    return out


def instantiate(schema: Schema | str, args: Sequence[BDFormula], modalities: Sequence[str] = (),
                variant: int = 1) -> OuterFormula:
    """The instance of ``schema`` at ``args``; side conditions are checked first.

    ``modalities`` picks the modality of ``equiv`` (one) or the order of
    ``part2`` (four, pairwise distinct); ``variant`` selects the conjunct of
    ``contr`` and ``neg``.
    """
    schema = Schema(schema)
    if schema is Schema.LUK_TAUT:
        raise SideConditionError("taut lines are checked by the tableau, not instantiated")
    if len(args) != ARITY[schema]:
        raise SideConditionError(f"{schema.value} takes {ARITY[schema]} argument(s), got {len(args)}")
    if variant not in range(1, VARIANTS.get(schema, 1) + 1):
        raise SideConditionError(f"{schema.value} has no variant {variant}")
    phi = args[0]
    if schema is Schema.EQUIV:
        chi = args[1]
        if not bd_equiv(phi, chi):
            raise SideConditionError(f"equiv needs BD-equivalent arguments; {render(phi)} and {render(chi)} are not")
        (x,) = modalities or ("Bl",)
        if x not in FOUR_MODALITIES:
            raise SideConditionError(f"unknown modality {x}")
        return Iff(_m(x, phi), _m(x, chi))
    if schema is Schema.CONTR:
        contra = And(phi, Neg(phi))
        if variant == 1:
            return LukNeg(_m("Bl", contra))
        return Iff(_m("Cf", phi), _m("Cf", contra))
    if schema is Schema.NEG:
        if variant == 1:
            return Iff(_m("Bl", Neg(phi)), _m("Db", phi))
        return Iff(_m("Cf", Neg(phi)), _m("Cf", phi))
    if schema is Schema.MON:
        chi = args[1]
        if not bd_entails(phi, chi):
            raise SideConditionError(f"mon needs {render(phi)} |= {render(chi)}, which fails")
        return Implies(_bc(phi), _bc(chi))
    if schema is Schema.PART1:
        return _sum([_m(x, phi) for x in FOUR_MODALITIES])
    if schema is Schema.PART2:
        order = tuple(modalities) or FOUR_MODALITIES
        if len(order) != 4 or set(order) != set(FOUR_MODALITIES):
            raise SideConditionError("part2 needs the four modalities in some order, pairwise distinct")
        terms = [_m(x, phi) for x in order]
        return Iff(Minus(_sum(terms), terms[3]), _sum(terms[:3]))
    chi = args[1]
    lhs = _bc(Or(phi, chi))
    rhs = Plus(Minus(_bc(phi), _bc(And(phi, chi))), _bc(chi))
    return Iff(lhs, rhs)


def all_variants(schema: Schema | str, args: Sequence[BDFormula]) -> list[OuterFormula]:
    """Every instance of ``schema`` at ``args`` over variants and modality choices."""
    schema = Schema(schema)
    if schema is Schema.EQUIV:
        return [instantiate(schema, args, (x,)) for x in FOUR_MODALITIES]
    if schema is Schema.PART2:
        return list(dict.fromkeys(instantiate(schema, args, order) for order in permutations(FOUR_MODALITIES)))
    return [instantiate(schema, args, variant=v) for v in range(1, VARIANTS.get(schema, 1) + 1)]


# -- instance families ------------------------------------------------------------------------------

def bd_formulas(variables: Iterable[str], depth: int) -> list[BDFormula]:
    """All BD formulas over ``variables`` with connective depth at most ``depth``."""
    layer: list[BDFormula] = [Var(v) for v in sorted(variables)]
    seen = list(layer)
    for _ in range(depth):
        new = [Neg(f) for f in seen]
        new += [c(f, g) for c in (And, Or) for f in seen for g in seen]
        seen = list(dict.fromkeys(seen + new))
    return seen


def equivalence_classes(formulas: Sequence[BDFormula], variables: Iterable[str]) -> list[list[BDFormula]]:
    """Group formulas by BD equivalence; the first member of each class is its representative."""
    variables = sorted(variables)
    classes: dict[tuple[int, int], list[BDFormula]] = {}
    for f in formulas:
        classes.setdefault(truth_table(f, variables), []).append(f)
    return list(classes.values())


@dataclass(frozen=True)
class Instance:
    schema: Schema
    args: tuple
    formula: OuterFormula

    def __str__(self):
        args = ", ".join(render(a) for a in self.args)
        return f"{self.schema.value}({args}): {render(self.formula)}"


def generate_instances(variables: Iterable[str], depth: int, cap: int = 5000) -> list[Instance]:
    """Axiom instances over BD arguments of depth at most ``depth``.

    Arguments are taken up to BD equivalence (one representative per class);
    ``equiv`` instances pair each representative with the other members of
    its class.  The order is deterministic.
    """
    variables = sorted(variables)
    classes = equivalence_classes(bd_formulas(variables, depth), variables)
    reps = [c[0] for c in classes]
    out: list[Instance] = []
    seen: set[OuterFormula] = set()

    def emit(schema, args):
        for f in all_variants(schema, args):
            if f not in seen:
                seen.add(f)
                out.append(Instance(schema, tuple(args), f))
                if len(out) > cap:
                    raise ResourceLimit(f"more than {cap} axiom instances")

    for phi in reps:
        emit(Schema.PART1, (phi,))
        emit(Schema.CONTR, (phi,))
        emit(Schema.NEG, (phi,))
    for cls in classes:
        for other in cls[1:]:
            emit(Schema.EQUIV, (cls[0], other))
    for phi, chi in product(reps, repeat=2):
        if bd_entails(phi, chi):
            emit(Schema.MON, (phi, chi))
    for phi, chi in product(reps, repeat=2):
        emit(Schema.EX, (phi, chi))
    for phi in reps:
        emit(Schema.PART2, (phi,))
    return out


# -- proofs ----------------------------------------------------------------------------------------

@dataclass(frozen=True)
class Premise:
    index: int


@dataclass(frozen=True)
class Axiom:
    schema: Schema
    args: tuple


@dataclass(frozen=True)
class Taut:
    pass


@dataclass(frozen=True)
class MP:
    minor: int
    major: int


@dataclass(frozen=True)
class DeltaNec:
    line: int


Justification = Union[Premise, Axiom, Taut, MP, DeltaNec]


@dataclass(frozen=True)
class ProofLine:
    formula: OuterFormula
    justification: Justification


@dataclass(frozen=True)
class ProofCheck:
    ok: bool
    failing_line: Optional[int] = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def _check_line(k: int, line: ProofLine, premises: Sequence[OuterFormula], lines: Sequence[ProofLine],
                from_premise: list[bool]) -> Optional[str]:
    f, just = line.formula, line.justification

    def earlier(i: int) -> OuterFormula:
        if not 1 <= i < k:
            raise _Reject(f"line {i} does not precede line {k}")
        return lines[i - 1].formula

    if isinstance(just, Premise):
        if not 1 <= just.index <= len(premises):
            return f"there is no premise {just.index}"
        if premises[just.index - 1] != f:
            return f"formula is not premise {just.index}"
        from_premise.append(True)
        return None
    if isinstance(just, Axiom):
        try:
            candidates = all_variants(just.schema, just.args)
        except SideConditionError as exc:
            return str(exc)
        if f not in candidates:
            return f"formula is not an instance of {just.schema.value}({', '.join(map(render, just.args))})"
        from_premise.append(False)
        return None
    if isinstance(just, Taut):
        if not isinstance(prove_luk_valid(f), Closed):
            return "formula is not a Łukasiewicz tautology"
        from_premise.append(False)
        return None
    if isinstance(just, MP):
        minor, major = earlier(just.minor), earlier(just.major)
        if not isinstance(major, Implies):
            return f"line {just.major} is not an implication"
        if major.left != minor:
            return f"antecedent of line {just.major} is not line {just.minor}"
        if major.right != f:
            return f"consequent of line {just.major} is not this formula"
        from_premise.append(from_premise[just.minor - 1] or from_premise[just.major - 1])
        return None
    if isinstance(just, DeltaNec):
        src = earlier(just.line)
        if from_premise[just.line - 1]:
            return f"dnec applied to line {just.line}, which depends on a premise"
        if f != Delta(src):
            return f"formula is not !(line {just.line})"
        from_premise.append(False)
        return None
    return "unknown justification"


class _Reject(Exception):
    pass


def check_proof(premises: Sequence[OuterFormula], lines: Sequence[ProofLine],
                goal: Optional[OuterFormula] = None) -> ProofCheck:
    """Check every line; report the first failing line (1-based) and why."""
    if not lines:
        return ProofCheck(False, None, "empty proof")
    from_premise: list[bool] = []
    for k, line in enumerate(lines, 1):
        try:
            check_dialect(line.formula, Dialect.FOUR)
            reason = _check_line(k, line, premises, lines, from_premise)
        except (_Reject, InputError) as exc:
            reason = str(exc)
        if reason is not None:
            return ProofCheck(False, k, reason)
    if goal is not None and lines[-1].formula != goal:
        return ProofCheck(False, len(lines), "last line is not the goal")
    return ProofCheck(True)


@dataclass(frozen=True)
class ProofFile:
    premises: tuple
    lines: tuple
    goal: Optional[OuterFormula]


_NUMBERED = re.compile(r"(\d+)\.\s*(.*?)\s*;\s*(.*)$")
_AXIOM = re.compile(r"axiom\s+([a-z0-9]+)\s*\((.*)\)$")


def _parse_justification(text: str, lineno: int) -> Justification:
    words = text.split()
    try:
        if words[0] == "premise" and len(words) == 2:
            return Premise(int(words[1]))
        if words[0] == "taut" and len(words) == 1:
            return Taut()
        if words[0] == "mp" and len(words) == 3:
            return MP(int(words[1]), int(words[2]))
        if words[0] == "dnec" and len(words) == 2:
            return DeltaNec(int(words[1]))
        m = _AXIOM.match(text)
        if m:
            schema = Schema(m.group(1))
            args = tuple(parse_bd(a) for a in m.group(2).split(","))
            return Axiom(schema, args)
    except (ValueError, IndexError):
        pass
    raise InputError(f"line {lineno}: bad justification {text!r}")


def parse_proof(text: str) -> ProofFile:
    premises, lines = [], []
    goal = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if line.startswith("premise "):
                premises.append(parse_outer(line[len("premise "):], Dialect.FOUR))
                continue
            if line.startswith("goal "):
                goal = parse_outer(line[len("goal "):], Dialect.FOUR)
                continue
            m = _NUMBERED.match(line)
            if not m:
                raise InputError(f"line {lineno}: cannot parse {line!r}")
            if int(m.group(1)) != len(lines) + 1:
                raise InputError(f"line {lineno}: expected proof line {len(lines) + 1}")
            formula = parse_outer(m.group(2), Dialect.FOUR)
            lines.append(ProofLine(formula, _parse_justification(m.group(3), lineno)))
        except ParseError as exc:
            raise InputError(f"line {lineno}: {exc}") from None
    return ProofFile(tuple(premises), tuple(lines), goal)
