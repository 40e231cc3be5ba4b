"""Random generators, hypothesis strategies and shared fixtures data."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

from hypothesis import strategies as st

from paraprob.bd import BDModel
from paraprob.luk import PairValue
from paraprob.modelfile import parse_model
from paraprob.syntax import (BINARY, FOUR_MODALITIES, And, Atom, Delta, LukNeg, ModalAtom, Neg, Or,
                             ParNeg, Var)

GOLDEN_TEXT = """\
world w0 { +p -p }
world w1 { -p -q }
weight w0 2/3
weight w1 1/3
"""


def golden():
    return parse_model(GOLDEN_TEXT)


# -- seeded generators ------------------------------------------------------------------------

def rand_rational(rng: random.Random, max_den: int = 12) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(0, den), den)


def rand_pair(rng: random.Random) -> PairValue:
    return PairValue(rand_rational(rng), rand_rational(rng))


def rand_bd(rng: random.Random, variables=("p", "q"), depth: int = 2):
    if depth == 0 or rng.random() < 0.3:
        return Var(rng.choice(variables))
    k = rng.randrange(3)
    if k == 0:
        return Neg(rand_bd(rng, variables, depth - 1))
    cls = And if k == 1 else Or
    return cls(rand_bd(rng, variables, depth - 1), rand_bd(rng, variables, depth - 1))


UNARY_PM = (ParNeg, LukNeg, Delta)
UNARY_FOUR = (LukNeg, Delta)


def rand_outer(rng: random.Random, atom, depth: int = 3, unary=UNARY_PM, leaf_p: float = 0.25):
    """Random outer formula; ``atom(rng)`` builds the leaves."""
    if depth == 0 or rng.random() < leaf_p:
        return atom(rng)
    if rng.random() < 0.35:
        return rng.choice(unary)(rand_outer(rng, atom, depth - 1, unary, leaf_p))
    cls = rng.choice(list(BINARY.values()))
    return cls(rand_outer(rng, atom, depth - 1, unary, leaf_p), rand_outer(rng, atom, depth - 1, unary, leaf_p))


def pm_atom(variables=("p", "q"), depth=2):
    return lambda rng: ModalAtom("Pr", rand_bd(rng, variables, depth))


def four_atom(variables=("p", "q"), depth=2):
    return lambda rng: ModalAtom(rng.choice(FOUR_MODALITIES), rand_bd(rng, variables, depth))


def luk_atom(names=("a", "b", "c")):
    return lambda rng: Atom(rng.choice(names))


def rand_model(rng: random.Random, variables=("p", "q"), max_worlds: int = 4, max_den: int = 6):
    n = rng.randint(1, max_worlds)
    worlds = [f"w{i}" for i in range(n)]
    vplus = {w: {p for p in variables if rng.random() < 0.5} for w in worlds}
    vminus = {w: {p for p in variables if rng.random() < 0.5} for w in worlds}
    raw = [rng.randint(0, max_den) for _ in worlds]
    if not any(raw):
        raw[0] = 1
    total = sum(raw)
    weights = {w: Fraction(r, total) for w, r in zip(worlds, raw)}
    return BDModel(worlds, vplus, vminus, variables), weights


def all_small_models(variables=("p", "q"), max_worlds=2):
    """Every model with at most ``max_worlds`` worlds over ``variables`` (unweighted)."""
    values = list(product((False, True), repeat=2))
    for n in range(1, max_worlds + 1):
        worlds = [f"w{i}" for i in range(n)]
        for combo in product(values, repeat=n * len(variables)):
            vplus = {w: set() for w in worlds}
            vminus = {w: set() for w in worlds}
            for k, (t, f) in enumerate(combo):
                w = worlds[k // len(variables)]
                p = variables[k % len(variables)]
                if t:
                    vplus[w].add(p)
                if f:
                    vminus[w].add(p)
            yield BDModel(worlds, vplus, vminus, variables)


# -- hypothesis strategies ---------------------------------------------------------------------

names = st.sampled_from(["p", "q", "r", "x1", "long_name"])

bd_strategy = st.recursive(
    names.map(Var),
    lambda sub: st.one_of(sub.map(Neg), st.tuples(sub, sub).map(lambda t: And(*t)),
                          st.tuples(sub, sub).map(lambda t: Or(*t))),
    max_leaves=8,
)

small_bd = st.recursive(
    st.sampled_from(["p", "q"]).map(Var),
    lambda sub: st.one_of(sub.map(Neg), st.tuples(sub, sub).map(lambda t: And(*t)),
                          st.tuples(sub, sub).map(lambda t: Or(*t))),
    max_leaves=4,
)


def outer_strategy(leaves, unary=UNARY_PM, max_leaves=6):
    def extend(sub):
        return st.one_of(
            st.tuples(st.sampled_from(unary), sub).map(lambda t: t[0](t[1])),
            st.tuples(st.sampled_from(list(BINARY.values())), sub, sub).map(lambda t: t[0](t[1], t[2])),
        )
    return st.recursive(leaves, extend, max_leaves=max_leaves)


pm_leaves = small_bd.map(lambda b: ModalAtom("Pr", b))
four_leaves = st.tuples(st.sampled_from(FOUR_MODALITIES), small_bd).map(lambda t: ModalAtom(*t))
pm_strategy = outer_strategy(pm_leaves)
four_strategy = outer_strategy(four_leaves, UNARY_FOUR)

rationals = st.fractions(min_value=0, max_value=1, max_denominator=24)
pairs = st.tuples(rationals, rationals).map(lambda t: PairValue(*t))


@st.composite
def models(draw, variables=("p", "q"), max_worlds=4):
    n = draw(st.integers(1, max_worlds))
    worlds = [f"w{i}" for i in range(n)]
    subsets = st.frozensets(st.sampled_from(variables))
    vplus = {w: draw(subsets) for w in worlds}
    vminus = {w: draw(subsets) for w in worlds}
    raw = draw(st.lists(st.integers(0, 6), min_size=n, max_size=n).filter(any))
    total = sum(raw)
    weights = {w: Fraction(r, total) for w, r in zip(worlds, raw)}
    return BDModel(worlds, vplus, vminus, variables), weights


# formulas stating that the map (x, y) -> (1 - y, 1 - x) commutes with the connectives
COMMUTATIONS = (
    "-~-a <-> --~a",
    "-~~a <-> ~-~a",
    "-~!a <-> !-~a",
    "-~(a -> b) <-> (-~a -> -~b)",
)


def rand_system(rng: random.Random, max_vars: int = 6, max_rows: int = 12):
    """Random mixed strict/non-strict system with small coefficients, plus bounds."""
    from paraprob.linear import AffineTerm, LinConstraint

    n = rng.randint(1, max_vars)
    names = [f"x{i}" for i in range(n)]
    system = []
    for _ in range(rng.randint(1, max_rows)):
        k = rng.randint(1, min(3, n))
        coeffs = {v: rng.choice((-2, -1, 1, 1, 2, 3)) for v in rng.sample(names, k)}
        const = Fraction(rng.randint(-4, 4), rng.choice((1, 1, 2, 3)))
        rel = rng.choice(("<=", "<=", "<", "<", "="))
        system.append(LinConstraint(AffineTerm(0, coeffs), rel, AffineTerm(const)))
    bounds = {}
    for v in names:
        r = rng.random()
        if r < 0.4:
            bounds[v] = (0, 1)
        elif r < 0.6:
            bounds[v] = (0, None)
    return system, bounds
