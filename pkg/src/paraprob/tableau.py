"""Constraint tableau for the paired Łukasiewicz logic with Delta.

A labelled formula ``f <=1 i`` says "the truth coordinate of ``f`` is at
most ``i``"; side 2 speaks about the falsity coordinate.  Rules decompose
labels over ``-``, ``~``, ``!`` and ``->``; the other connectives are first
rewritten into these four.  A saturated branch is closed when the linear
system made of its numeric constraints and its atomic labels (translated by
:func:`tau`) has no solution.

Bounds ``i`` are affine terms over variables ranging over [0, 1]: the root
variable ``c``, fresh variables ``j1, j2, ...`` and the atom variables
``xL:<atom>`` / ``xR:<atom>``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Optional, Sequence, Union

from .errors import DialectError, ResourceLimit
from .linear import AffineTerm, Feasible, LinConstraint, feasible, ge, gt, le, lt
from .luk import PairValue, evaluate_pair
from .syntax import (Atom, Conj, Delta, Disj, Iff, Implies, LukNeg, Minus, ModalAtom,
                     OuterFormula, ParNeg, Plus, Strong, render, walk)

DEFAULT_BUDGET = 200_000

LE, GE = "<=", ">="


def desugar(f: OuterFormula) -> OuterFormula:
    """Rewrite every connective into ``-``, ``~``, ``!`` and ``->``."""
    if isinstance(f, (Atom, ModalAtom)):
        return f
    if isinstance(f, (ParNeg, LukNeg, Delta)):
        return type(f)(desugar(f.arg))
    a, b = desugar(f.left), desugar(f.right)
    if isinstance(f, Implies):
        return Implies(a, b)
    if isinstance(f, Disj):
        return _or(a, b)
    if isinstance(f, Conj):
        return LukNeg(_or(LukNeg(a), LukNeg(b)))
    if isinstance(f, Plus):
        return Implies(LukNeg(a), b)
    if isinstance(f, Strong):
        return _strong(a, b)
    if isinstance(f, Minus):
        return _strong(a, LukNeg(b))
    if isinstance(f, Iff):
        return _strong(Implies(a, b), Implies(b, a))
    raise DialectError(f"unknown connective in {render(f)}", f)


def _or(a, b):
    return Implies(Implies(a, b), b)


def _strong(a, b):
    return LukNeg(Implies(a, LukNeg(b)))


def is_atomic(f: OuterFormula) -> bool:
    return isinstance(f, (Atom, ModalAtom))


def atom_key(f: OuterFormula) -> str:
    return f.name if isinstance(f, Atom) else render(f)


def atom_var(f: OuterFormula, side: int) -> str:
    return f"x{'L' if side == 1 else 'R'}:{atom_key(f)}"


@dataclass(frozen=True)
class LabelledFormula:
    formula: OuterFormula
    side: int
    dir: str
    bound: AffineTerm

    def __post_init__(self):
        if self.side not in (1, 2) or self.dir not in (LE, GE):
            raise ValueError("side must be 1 or 2 and dir '<=' or '>='")
        object.__setattr__(self, "bound", AffineTerm.lift(self.bound))

    def __str__(self):
        return f"{render(self.formula)} {self.dir}{self.side} {self.bound}"


def tau(lf: LabelledFormula) -> LinConstraint:
    if not is_atomic(lf.formula):
        raise ValueError(f"tau needs an atomic label, got {lf}")
    x = AffineTerm.var(atom_var(lf.formula, lf.side))
    return le(x, lf.bound) if lf.dir == LE else ge(x, lf.bound)


@dataclass(frozen=True)
class Branch:
    pending: tuple[LabelledFormula, ...] = ()
    atomic: tuple[LabelledFormula, ...] = ()
    expanded: tuple[LabelledFormula, ...] = ()
    numeric: tuple[LinConstraint, ...] = ()
    fresh: int = 0
    depth: int = 0

    @property
    def saturated(self) -> bool:
        return not self.pending

    def constraints(self) -> list[LinConstraint]:
        return list(self.numeric) + [tau(a) for a in self.atomic]

    def variables(self) -> set[str]:
        out: set[str] = set()
        for c in self.constraints():
            out |= c.variables()
        return out

    def extend(self, labels: Iterable[LabelledFormula] = (), numeric: Iterable[LinConstraint] = ()) -> "Branch":
        pending, atomic = list(self.pending), list(self.atomic)
        for lf in labels:
            (atomic if is_atomic(lf.formula) else pending).append(lf)
        return replace(self, pending=tuple(pending), atomic=tuple(atomic),
                       numeric=self.numeric + tuple(numeric))


def make_root(labels: Iterable[LabelledFormula], numeric: Iterable[LinConstraint] = ()) -> Branch:
    labels = [replace(lf, formula=desugar(lf.formula)) for lf in labels]
    return Branch().extend(labels, numeric)


def is_branching(lf: LabelledFormula) -> bool:
    f = lf.formula
    if isinstance(f, Delta):
        return True
    if isinstance(f, Implies):
        return (lf.side, lf.dir) in ((1, LE), (2, GE))
    return False


def apply_rule(branch: Branch, lf: LabelledFormula,
               fresh: Optional[Callable[[], str]] = None) -> list[Branch]:
    """Expand ``lf`` (which must be pending in ``branch``) into successor branches."""
    if lf not in branch.pending:
        raise ValueError(f"{lf} is not pending on this branch")
    counter = branch.fresh
    if fresh is None:
        def fresh():
            nonlocal counter
            counter += 1
            return f"j{counter}"
    rest = list(branch.pending)
    rest.remove(lf)
    base = replace(branch, pending=tuple(rest), expanded=branch.expanded + (lf,), depth=branch.depth + 1)
    alternatives = _conclusions(lf, fresh)
    base = replace(base, fresh=counter)
    return [base.extend(labels, numeric) for labels, numeric in alternatives]


def _conclusions(lf: LabelledFormula, fresh) -> list[tuple[list, list]]:
    f, s, d, i = lf.formula, lf.side, lf.dir, lf.bound
    L = lambda g, side, dir_, b: LabelledFormula(g, side, dir_, b)  # noqa: E731
    if is_atomic(f):
        raise ValueError(f"atomic label {lf} is terminal")
    if isinstance(f, ParNeg):
        return [([L(f.arg, 3 - s, d, i)], [])]
    if isinstance(f, LukNeg):
        return [([L(f.arg, s, GE if d == LE else LE, 1 - i)], [])]
    if isinstance(f, Delta):
        j = AffineTerm.var(fresh())
        g = f.arg
        if (s, d) == (1, GE):
            return [([], [le(i, 0)]), ([L(g, 1, GE, j)], [ge(j, 1)])]
        if (s, d) == (1, LE):
            return [([], [ge(i, 1)]), ([L(g, 1, LE, j)], [lt(j, 1)])]
        if (s, d) == (2, LE):
            return [([], [ge(i, 1)]), ([L(g, 2, LE, j)], [le(j, 0)])]
        return [([], [le(i, 0)]), ([L(g, 2, GE, j)], [gt(j, 0)])]
    if isinstance(f, Implies):
        j = AffineTerm.var(fresh())
        a, b = f.left, f.right
        if (s, d) == (1, LE):
            return [([], [ge(i, 1)]), ([L(a, 1, GE, 1 - i + j), L(b, 1, LE, j)], [le(j, i)])]
        if (s, d) == (2, LE):
            return [([L(a, 2, GE, j), L(b, 2, LE, i + j)], [])]
        if (s, d) == (1, GE):
            return [([L(a, 1, LE, 1 - i + j), L(b, 1, GE, j)], [])]
        return [([], [le(i, 0)]), ([L(a, 2, LE, j), L(b, 2, GE, i + j)], [le(j, 1 - i)])]
    raise DialectError(f"no tableau rule for {render(f)}; desugar first", f)


def pick(branch: Branch) -> LabelledFormula:
    """Next label to expand: the first non-branching one, else the first pending."""
    for lf in branch.pending:
        if not is_branching(lf):
            return lf
    return branch.pending[0]


def unit_bounds(names: Iterable[str]) -> dict[str, tuple[int, int]]:
    return {n: (0, 1) for n in names}


def _bounds_for(constraints: Sequence[LinConstraint], extra=None) -> dict:
    names: set[str] = set()
    for c in constraints:
        names |= c.variables()
    bounds = unit_bounds(names)
    if extra:
        bounds.update(extra)
    return bounds


def branch_feasibility(branch: Branch, background: Sequence[LinConstraint] = (), extra_bounds=None):
    system = branch.constraints() + list(background)
    return feasible(system, _bounds_for(system, extra_bounds))


# -- saturation ---------------------------------------------------------------------------------

@dataclass
class Node:
    """A tableau node: the labels and constraints it adds, and its children."""

    added: tuple
    branch: Branch
    children: list["Node"] = field(default_factory=list)
    verdict: Optional[object] = None


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def spend(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.limit:
            raise ResourceLimit(f"tableau exceeded its budget of {self.limit} branch nodes")


def _global_namer() -> Callable[[], str]:
    counter = itertools.count(1)
    return lambda: f"j{next(counter)}"


def saturate(root: Branch | Iterable, budget: int = DEFAULT_BUDGET) -> list[Branch]:
    """All fully expanded branches below ``root``, without pruning."""
    return [n.branch for n in _leaves(saturate_tree(root, budget))]


def _as_branch(root) -> Branch:
    if isinstance(root, Branch):
        return root
    labels, numeric = [], []
    for item in root:
        (numeric if isinstance(item, LinConstraint) else labels).append(item)
    return make_root(labels, numeric)


def saturate_tree(root, budget: int = DEFAULT_BUDGET, background: Sequence[LinConstraint] = (),
                  extra_bounds=None) -> Node:
    """Expand the full tableau tree and attach an LP verdict to every leaf."""
    root = _as_branch(root)
    spent = _Budget(budget)
    fresh = _global_namer()
    top = Node(tuple(root.pending) + tuple(root.atomic) + tuple(root.numeric), root)
    stack = [top]
    while stack:
        node = stack.pop()
        b = node.branch
        if b.saturated:
            node.verdict = branch_feasibility(b, background, extra_bounds)
            continue
        old_labels = set(b.pending) | set(b.atomic)
        for child in apply_rule(b, pick(b), fresh):
            spent.spend()
            added = tuple(x for x in child.pending + child.atomic if x not in old_labels)
            added += child.numeric[len(b.numeric):]
            sub = Node(added, child)
            node.children.append(sub)
        stack.extend(reversed(node.children))
    return top


def _leaves(node: Node) -> Iterator[Node]:
    stack = [node]
    while stack:
        n = stack.pop()
        if not n.children:
            yield n
        else:
            stack.extend(reversed(n.children))


def dump_tree(node: Node, indent: str = "  ") -> str:
    lines: list[str] = []

    def go(n: Node, depth: int) -> None:
        pad = indent * depth
        for item in n.added:
            lines.append(pad + str(item))
        if not n.children:
            verdict = "open (feasible)" if isinstance(n.verdict, Feasible) else "closed (infeasible)"
            lines.append(pad + f"=> {verdict}")
        for k, child in enumerate(n.children):
            if len(n.children) > 1:
                lines.append(pad + f"branch {k + 1}:")
                go(child, depth + 1)
            else:
                go(child, depth)

    go(node, 0)
    return "\n".join(lines)


# -- proof search ----------------------------------------------------------------------------------

@dataclass(frozen=True)
class Closed:
    certificates: tuple[tuple[LinConstraint, ...], ...]
    nodes: int = 0

    def __bool__(self):
        return True


@dataclass(frozen=True)
class Open:
    branch: Branch
    assignment: dict
    nodes: int = 0

    def __bool__(self):
        return False

    def atom_values(self, atoms: Iterable[OuterFormula]) -> dict:
        out = {}
        for a in atoms:
            out[a] = PairValue(Fraction(self.assignment.get(atom_var(a, 1), 0)),
                               Fraction(self.assignment.get(atom_var(a, 2), 0)))
        return out


TableauResult = Union[Closed, Open]


def search(root: Branch, background: Sequence[LinConstraint] = (), extra_bounds=None,
           budget: int = DEFAULT_BUDGET, prune: bool = True) -> TableauResult:
    """Depth-first search for a feasible saturated branch.

    Branches created by a branching rule are checked for feasibility on the
    spot and dropped when infeasible; infeasibility is preserved by further
    expansion, so this only saves work.  ``background`` constraints are
    added at saturated branches only.
    """
    spent = _Budget(budget)
    fresh = _global_namer()
    certificates: list[tuple[LinConstraint, ...]] = []
    stack = [root]
    while stack:
        b = stack.pop()
        if b.saturated:
            verdict = branch_feasibility(b, background, extra_bounds)
            if isinstance(verdict, Feasible):
                return Open(b, verdict.assignment, spent.used)
            certificates.append(tuple(b.constraints()) + tuple(background))
            continue
        children = apply_rule(b, pick(b), fresh)
        spent.spend(len(children))
        if prune and len(children) > 1:
            kept = []
            for child in children:
                if isinstance(branch_feasibility(child, (), extra_bounds), Feasible):
                    kept.append(child)
                else:
                    certificates.append(tuple(child.constraints()))
            children = kept
        stack.extend(reversed(children))
    return Closed(tuple(certificates), spent.used)


def refutation_root(phi: OuterFormula) -> Branch:
    c = AffineTerm.var("c")
    return make_root([LabelledFormula(phi, 1, LE, c)], [lt(c, 1)])


def satisfaction_root(phi: OuterFormula) -> Branch:
    c = AffineTerm.var("c")
    return make_root([LabelledFormula(phi, 1, GE, c)], [ge(c, 1)])


def atoms_of(f: OuterFormula) -> list[OuterFormula]:
    return list(dict.fromkeys(g for g in walk(f) if is_atomic(g)))


def prove_luk_valid(phi: OuterFormula, budget: int = DEFAULT_BUDGET) -> TableauResult:
    """Closed iff ``phi`` has truth value 1 under every pair valuation of its atoms.

    On Open the assignment is checked by evaluating ``phi`` directly.
    """
    result = search(refutation_root(phi), budget=budget)
    if isinstance(result, Open):
        values = result.atom_values(atoms_of(phi))
        v = evaluate_pair(phi, lambda a: values[a])
        if not v.truth < 1:
            raise AssertionError(f"open branch does not refute {render(phi)}: value {v}")
    return result


def luk_witness(phi: OuterFormula, result: Open) -> dict:
    """Atom values of an open branch, as pairs."""
    return result.atom_values(atoms_of(phi))


def side_two_free(branch: Branch) -> bool:
    return all(lf.side == 1 for lf in branch.pending + branch.atomic + branch.expanded)


def parneg_free(f: OuterFormula) -> bool:
    return not any(isinstance(g, ParNeg) for g in walk(f))

