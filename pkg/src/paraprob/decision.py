"""Validity and satisfiability for the PM and Four logics.

The PM pipeline:

1. push ``-`` into the ``Pr`` atoms (:func:`~paraprob.embeddings.nnf`);
2. put every body in BD negation normal form and replace each literal
   ``-p`` by a fresh variable ``pSTAR`` (:func:`star_transform`), so the
   truth coordinate of every atom is the probability of a classical event;
3. abstract the distinct atoms to outer atoms ``q1..qn``;
4. run the tableau on the abstraction and test every saturated branch
   together with the coherence system tying ``q_i`` to a probability
   distribution over classical valuations of the starred vocabulary.

Four formulas go through ``to_pm`` by default (``route="embed"``), or through
an independent coherence system over four-valued valuations
(``route="direct"``).  Every countermodel is rebuilt as a weighted BD model
and re-evaluated before it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Optional, Sequence, Union

from .bd import BDModel, value4
from .embeddings import nnf, to_pm
from .errors import ResourceLimit
from .linear import AffineTerm, Feasible, LinConstraint, eq, vertex_solution
from .luk import eval_four, eval_pm
from .syntax import (And, Atom, BDFormula, Delta, Dialect, Implies, LukNeg, ModalAtom, Neg, Or,
                     OuterFormula, ParNeg, Strong, Var, check_dialect, map_atoms, modal_atoms, props,
                     render)
from .tableau import (DEFAULT_BUDGET, Closed, Open, atom_var, refutation_root, satisfaction_root,
                      search)

DEFAULT_MAX_VARS = 12
STAR_SUFFIX = "STAR"


# -- star transform ----------------------------------------------------------------------------

def bd_nnf(f: BDFormula) -> BDFormula:
    """Push ``-`` down to the variables using the De Morgan dualities of BD."""
    if isinstance(f, Var):
        return f
    if isinstance(f, And):
        return And(bd_nnf(f.left), bd_nnf(f.right))
    if isinstance(f, Or):
        return Or(bd_nnf(f.left), bd_nnf(f.right))
    g = f.arg
    if isinstance(g, Var):
        return f
    if isinstance(g, Neg):
        return bd_nnf(g.arg)
    if isinstance(g, And):
        return Or(bd_nnf(Neg(g.left)), bd_nnf(Neg(g.right)))
    return And(bd_nnf(Neg(g.left)), bd_nnf(Neg(g.right)))


@dataclass(frozen=True)
class StarMap:
    stars: dict  # original variable -> star variable
    originals: frozenset

    def star_of(self, p: str) -> Optional[str]:
        return self.stars.get(p)

    def unstar(self) -> dict:
        return {s: p for p, s in self.stars.items()}


def _star_names(variables: Iterable[str], needed: Iterable[str]) -> dict:
    taken = set(variables)
    out = {}
    for p in sorted(needed):
        name = p + STAR_SUFFIX
        k = 1
        while name in taken:
            k += 1
            name = f"{p}{STAR_SUFFIX}{k}"
        taken.add(name)
        out[p] = name
    return out


def _negated_vars(f: BDFormula) -> set[str]:
    if isinstance(f, Var):
        return set()
    if isinstance(f, Neg):
        return {f.arg.name} if isinstance(f.arg, Var) else _negated_vars(f.arg)
    return _negated_vars(f.left) | _negated_vars(f.right)


def _apply_star(f: BDFormula, stars: Mapping[str, str]) -> BDFormula:
    if isinstance(f, Var):
        return f
    if isinstance(f, Neg):
        return Var(stars[f.arg.name])
    return type(f)(_apply_star(f.left, stars), _apply_star(f.right, stars))


def star_transform(alpha: OuterFormula) -> tuple[OuterFormula, StarMap]:
    """Make every ``Pr`` body ``-``-free by renaming negative literals.

    ``alpha`` must not contain ``-`` outside the modal atoms.
    """
    check_dialect(alpha, Dialect.PM)
    if any(isinstance(g, ParNeg) for g in _outer_nodes(alpha)):
        raise ValueError("star_transform needs a formula in outer negation normal form")
    bodies = {a.body: bd_nnf(a.body) for a in modal_atoms(alpha)}
    negated = set().union(*(_negated_vars(b) for b in bodies.values())) if bodies else set()
    variables = props(alpha)
    stars = _star_names(variables, negated)
    out = map_atoms(alpha, lambda a: ModalAtom(a.modality, _apply_star(bodies[a.body], stars)))
    return out, StarMap(stars, frozenset(variables))


def _outer_nodes(f: OuterFormula):
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        if isinstance(g, (ParNeg, LukNeg, Delta)):
            stack.append(g.arg)
        elif not isinstance(g, (ModalAtom, Atom)):
            stack.extend((g.left, g.right))


# -- atom abstraction and coherence --------------------------------------------------------------

@dataclass(frozen=True)
class AtomAbstraction:
    atoms: tuple  # the distinct modal atoms, in first-occurrence order
    names: tuple  # q1..qn

    @property
    def n(self) -> int:
        return len(self.atoms)

    def atom_of(self) -> dict:
        return dict(zip(self.names, self.atoms))

    def z(self, i: int) -> str:
        return atom_var(Atom(self.names[i]), 1)


def abstract_atoms(alpha: OuterFormula) -> tuple[OuterFormula, AtomAbstraction]:
    atoms = tuple(modal_atoms(alpha))
    names = tuple(f"q{k + 1}" for k in range(len(atoms)))
    table = dict(zip(atoms, names))
    return map_atoms(alpha, lambda a: Atom(table[a])), AtomAbstraction(atoms, names)


def classical_truth(f: BDFormula, true_vars: frozenset) -> bool:
    if isinstance(f, Var):
        return f.name in true_vars
    if isinstance(f, And):
        return classical_truth(f.left, true_vars) and classical_truth(f.right, true_vars)
    if isinstance(f, Or):
        return classical_truth(f.left, true_vars) or classical_truth(f.right, true_vars)
    raise ValueError("classical_truth needs a --free body")


@dataclass(frozen=True)
class Exhaustive:
    """All valuations of the vocabulary."""


@dataclass(frozen=True)
class SparseGuess:
    """An externally supplied list of valuations."""

    valuations: tuple


@dataclass(frozen=True)
class CoherenceSystem:
    valuations: tuple  # classical: frozensets of true variables; four-valued: dicts
    u_names: tuple
    coefficients: tuple  # coefficients[i][k] = a_{i, v_k}
    constraints: tuple
    z_names: tuple

    @property
    def bounds(self) -> dict:
        return {u: (0, None) for u in self.u_names}

    def pinned(self, z_values: Sequence[Fraction]) -> list[LinConstraint]:
        """The system with every z_i replaced by a constant."""
        rows = [self.constraints[0]]
        for coeffs, z in zip(self.coefficients, z_values):
            lhs = AffineTerm(0, {u: a for u, a in zip(self.u_names, coeffs) if a})
            rows.append(eq(lhs, z))
        return rows


def _u_name(v: frozenset) -> str:
    return "u[" + ",".join(sorted(v)) + "]"


def _assemble(valuations, u_names, coefficients, z_names) -> CoherenceSystem:
    total = AffineTerm(0, {u: 1 for u in u_names})
    rows = [eq(total, 1)]
    for coeffs, z in zip(coefficients, z_names):
        lhs = AffineTerm(0, {u: a for u, a in zip(u_names, coeffs) if a})
        rows.append(eq(lhs, AffineTerm.var(z)))
    return CoherenceSystem(tuple(valuations), tuple(u_names), tuple(map(tuple, coefficients)),
                           tuple(rows), tuple(z_names))


def build_coherence(abstraction: AtomAbstraction, variables: Iterable[str], mode=Exhaustive(),
                    max_vars: int = DEFAULT_MAX_VARS) -> CoherenceSystem:
    """Coherence system over classical valuations of ``variables`` (``-``-free bodies)."""
    names = sorted(variables)
    if isinstance(mode, SparseGuess):
        valuations = [frozenset(v) for v in mode.valuations]
    else:
        if len(names) > max_vars:
            raise ResourceLimit(f"{len(names)} variables exceed the coherence cap of {max_vars}")
        valuations = [frozenset(p for p, bit in zip(names, bits) if bit)
                      for bits in product((False, True), repeat=len(names))]
    coefficients = [[1 if classical_truth(a.body, v) else 0 for v in valuations]
                    for a in abstraction.atoms]
    z_names = [abstraction.z(i) for i in range(abstraction.n)]
    return _assemble(valuations, [_u_name(v) for v in valuations], coefficients, z_names)


_FOUR_CLASS = {"Bl": (True, False), "Db": (False, True), "Cf": (True, True), "Uc": (False, False)}
_FOUR_SYMBOL = {(True, False): "t", (False, True): "f", (True, True): "b", (False, False): "n"}


def build_four_coherence(abstraction: AtomAbstraction, variables: Iterable[str],
                         max_vars: int = DEFAULT_MAX_VARS) -> CoherenceSystem:
    """Coherence system over four-valued valuations for atoms ``Bl/Db/Cf/Uc f``."""
    names = sorted(variables)
    if 2 * len(names) > max_vars:
        raise ResourceLimit(f"{len(names)} four-valued variables exceed the coherence cap")
    valuations = [dict(zip(names, combo)) for combo in product(_FOUR_CLASS.values(), repeat=len(names))]
    coefficients = [[1 if value4(a.body, v) == _FOUR_CLASS[a.modality] else 0 for v in valuations]
                    for a in abstraction.atoms]
    u_names = ["u[" + ",".join(f"{p}={_FOUR_SYMBOL[v[p]]}" for p in names) + "]" for v in valuations]
    z_names = [abstraction.z(i) for i in range(abstraction.n)]
    return _assemble(valuations, u_names, coefficients, z_names)


# -- verdicts ----------------------------------------------------------------------------------------

@dataclass(frozen=True)
class Stats:
    nodes: int = 0
    branch_rows: int = 0
    atoms: int = 0
    nonzero: int = 0
    valuations: int = 0


@dataclass(frozen=True)
class Valid:
    stats: Stats = field(default=Stats(), compare=False)
    positive = True


@dataclass(frozen=True)
class Unsat:
    stats: Stats = field(default=Stats(), compare=False)
    positive = False


@dataclass(frozen=True)
class Invalid:
    model: BDModel
    weights: dict
    value: object
    stats: Stats = field(default=Stats(), compare=False)
    positive = False


@dataclass(frozen=True)
class Sat:
    model: BDModel
    weights: dict
    value: object
    stats: Stats = field(default=Stats(), compare=False)
    positive = True


Verdict = Union[Valid, Invalid, Sat, Unsat]


@dataclass
class _Prepared:
    abstract: OuterFormula
    abstraction: AtomAbstraction
    coherence: CoherenceSystem
    to_world: object  # valuation -> (plus, minus)
    variables: frozenset


def _prepare_pm(alpha: OuterFormula, mode, max_vars: int) -> _Prepared:
    check_dialect(alpha, Dialect.PM)
    starred, stars = star_transform(nnf(alpha))
    abstract, abstraction = abstract_atoms(starred)
    vocabulary = props(starred)
    coherence = build_coherence(abstraction, vocabulary, mode, max_vars)
    unstar = stars.unstar()

    def to_world(v: frozenset):
        plus = {p for p in v if p not in unstar}
        minus = {unstar[s] for s in v if s in unstar}
        return plus, minus

    return _Prepared(abstract, abstraction, coherence, to_world, stars.originals)


def _prepare_four_direct(beta: OuterFormula, max_vars: int) -> _Prepared:
    check_dialect(beta, Dialect.FOUR)
    abstract, abstraction = abstract_atoms(beta)
    variables = props(beta)
    coherence = build_four_coherence(abstraction, variables, max_vars)

    def to_world(v: dict):
        return {p for p, (t, _) in v.items() if t}, {p for p, (_, n) in v.items() if n}

    return _Prepared(abstract, abstraction, coherence, to_world, frozenset(variables))


def _run(prep: _Prepared, root, budget: int):
    return search(root, background=prep.coherence.constraints, extra_bounds=prep.coherence.bounds,
                  budget=budget)


def _witness(prep: _Prepared, result: Open) -> tuple[BDModel, dict, Stats]:
    coh = prep.coherence
    z = [Fraction(result.assignment.get(name, 0)) for name in coh.z_names]
    vertex = vertex_solution(coh.pinned(z), coh.bounds)
    if not isinstance(vertex, Feasible):
        raise AssertionError("coherence system lost feasibility after pinning atom values")
    worlds, vplus, vminus, weights = [], {}, {}, {}
    for k, (u, v) in enumerate(zip(coh.u_names, coh.valuations)):
        weight = vertex.assignment.get(u, Fraction(0))
        if weight:
            w = f"w{len(worlds)}"
            worlds.append(w)
            vplus[w], vminus[w] = prep.to_world(v)
            weights[w] = weight
    model = BDModel(worlds, vplus, vminus, prep.variables)
    stats = Stats(nodes=result.nodes, branch_rows=len(result.branch.constraints()),
                  atoms=prep.abstraction.n, nonzero=len(worlds), valuations=len(coh.valuations))
    return model, weights, stats


def _closed_stats(prep: _Prepared, result: Closed) -> Stats:
    return Stats(nodes=result.nodes, atoms=prep.abstraction.n, valuations=len(prep.coherence.valuations))


def decide_valid_pm(alpha: OuterFormula, mode=Exhaustive(), max_vars: int = DEFAULT_MAX_VARS,
                    budget: int = DEFAULT_BUDGET) -> Verdict:
    """Valid iff the truth coordinate of ``alpha`` is 1 in every measured BD model."""
    prep = _prepare_pm(alpha, mode, max_vars)
    result = _run(prep, refutation_root(prep.abstract), budget)
    if isinstance(result, Closed):
        return Valid(_closed_stats(prep, result))
    model, weights, stats = _witness(prep, result)
    value = eval_pm(model, weights, alpha)
    if not value.truth < 1:
        raise AssertionError(f"countermodel for {render(alpha)} evaluates to {value}")
    return Invalid(model, weights, value, stats)


def decide_sat_pm(alpha: OuterFormula, require_e2_zero: bool = False, mode=Exhaustive(),
                  max_vars: int = DEFAULT_MAX_VARS, budget: int = DEFAULT_BUDGET) -> Verdict:
    """Sat iff some measured model gives ``alpha`` truth coordinate 1.

    With ``require_e2_zero`` the falsity coordinate must also be 0; this is
    encoded as satisfiability of ``alpha (*) ~-alpha``.
    """
    check_dialect(alpha, Dialect.PM)
    target = Strong(alpha, LukNeg(ParNeg(alpha))) if require_e2_zero else alpha
    prep = _prepare_pm(target, mode, max_vars)
    result = _run(prep, satisfaction_root(prep.abstract), budget)
    if isinstance(result, Closed):
        return Unsat(_closed_stats(prep, result))
    model, weights, stats = _witness(prep, result)
    value = eval_pm(model, weights, alpha)
    if value.truth != 1 or (require_e2_zero and value.falsity != 0):
        raise AssertionError(f"witness for {render(alpha)} evaluates to {value}")
    return Sat(model, weights, value, stats)


def _four_prep(beta: OuterFormula, route: str, max_vars: int) -> _Prepared:
    check_dialect(beta, Dialect.FOUR)
    if route == "embed":
        return _prepare_pm(to_pm(beta), Exhaustive(), max_vars)
    if route == "direct":
        return _prepare_four_direct(beta, max_vars)
    raise ValueError(f"unknown route {route!r}")


def decide_valid_four(beta: OuterFormula, route: str = "embed", max_vars: int = DEFAULT_MAX_VARS,
                      budget: int = DEFAULT_BUDGET) -> Verdict:
    prep = _four_prep(beta, route, max_vars)
    result = _run(prep, refutation_root(prep.abstract), budget)
    if isinstance(result, Closed):
        return Valid(_closed_stats(prep, result))
    model, weights, stats = _witness(prep, result)
    value = eval_four(model, weights, beta)
    if not value < 1:
        raise AssertionError(f"countermodel for {render(beta)} evaluates to {value}")
    return Invalid(model, weights, value, stats)


def decide_sat_four(beta: OuterFormula, route: str = "embed", max_vars: int = DEFAULT_MAX_VARS,
                    budget: int = DEFAULT_BUDGET) -> Verdict:
    prep = _four_prep(beta, route, max_vars)
    result = _run(prep, satisfaction_root(prep.abstract), budget)
    if isinstance(result, Closed):
        return Unsat(_closed_stats(prep, result))
    model, weights, stats = _witness(prep, result)
    value = eval_four(model, weights, beta)
    if value != 1:
        raise AssertionError(f"witness for {render(beta)} evaluates to {value}")
    return Sat(model, weights, value, stats)


def entailment_formula(premises: Sequence[OuterFormula], conclusion: OuterFormula) -> OuterFormula:
    """``(!g1 (*) ... (*) !gk) -> a``, or ``a`` itself when there are no premises."""
    if not premises:
        return conclusion
    body = Delta(premises[0])
    for g in premises[1:]:
        body = Strong(body, Delta(g))
    return Implies(body, conclusion)


def decide_entails_four(premises: Sequence[OuterFormula], conclusion: OuterFormula, route: str = "embed",
                        max_vars: int = DEFAULT_MAX_VARS, budget: int = DEFAULT_BUDGET) -> Verdict:
    """Valid iff every model giving all premises value 1 gives the conclusion value 1."""
    for g in premises:
        check_dialect(g, Dialect.FOUR)
    verdict = decide_valid_four(entailment_formula(premises, conclusion), route, max_vars, budget)
    if isinstance(verdict, Invalid):
        values = [eval_four(verdict.model, verdict.weights, g) for g in premises]
        value = eval_four(verdict.model, verdict.weights, conclusion)
        if any(v != 1 for v in values) or not value < 1:
            raise AssertionError("entailment countermodel does not separate premises from conclusion")
        return Invalid(verdict.model, verdict.weights, value, verdict.stats)
    return verdict
