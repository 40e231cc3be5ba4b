"""Belnap-Dunn models, extensions of inner formulas and BD entailment."""

from __future__ import annotations

from enum import Enum
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, Mapping

from .errors import ModelError, ResourceLimit
from .syntax import And, BDFormula, Neg, Or, Var, props

MAX_ENTAILMENT_VARS = 12


class ExtensionKind(Enum):
    PLUS = "+"
    MINUS = "-"
    B = "b"
    D = "d"
    C = "c"
    U = "u"


class BDModel:
    """Finite set of worlds with independent truth and falsity valuations.

    ``vplus[w]`` is the set of variables true at ``w`` (``w`` in v+(p)) and
    ``vminus[w]`` those false at ``w``.  A variable in neither is a gap, in both
    a glut.  ``variables`` is the vocabulary the model speaks about; it
    defaults to the variables mentioned and only matters for :func:`dual_model`.
    """

    __slots__ = ("worlds", "vplus", "vminus", "variables", "_cache", "_key")

    def __init__(self, worlds: Iterable[str], vplus: Mapping[str, Iterable[str]] | None = None,
                 vminus: Mapping[str, Iterable[str]] | None = None,
                 variables: Iterable[str] | None = None):
        worlds = tuple(worlds)
        if not worlds:
            raise ModelError("a model needs at least one world")
        if len(set(worlds)) != len(worlds):
            raise ModelError("duplicate world ids")
        vplus = dict(vplus or {})
        vminus = dict(vminus or {})
        for table in (vplus, vminus):
            unknown = set(table) - set(worlds)
            if unknown:
                raise ModelError(f"valuation mentions unknown worlds {sorted(unknown)}")
        self.worlds = worlds
        self.vplus = {w: frozenset(vplus.get(w, ())) for w in worlds}
        self.vminus = {w: frozenset(vminus.get(w, ())) for w in worlds}
        mentioned = set()
        for w in worlds:
            mentioned |= self.vplus[w] | self.vminus[w]
        self.variables = frozenset(mentioned | set(variables or ()))
        self._key = (worlds, tuple(self.vplus[w] for w in worlds),
                     tuple(self.vminus[w] for w in worlds), self.variables)
        self._cache: dict[BDFormula, tuple[frozenset, frozenset]] = {}

    def __eq__(self, other):
        return isinstance(other, BDModel) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        parts = []
        for w in self.worlds:
            lits = [f"+{p}" for p in sorted(self.vplus[w])] + [f"-{p}" for p in sorted(self.vminus[w])]
            parts.append(f"{w}{{{' '.join(lits)}}}")
        return f"BDModel({', '.join(parts)})"

    def all_worlds(self) -> frozenset[str]:
        return frozenset(self.worlds)


def supports(model: BDModel, world: str, f: BDFormula) -> tuple[bool, bool]:
    """Return ``(w |=+ f, w |=- f)``."""
    if world not in model.vplus:
        raise ModelError(f"unknown world {world!r}")
    return _supports(model.vplus[world], model.vminus[world], f)


def _supports(plus: frozenset, minus: frozenset, f: BDFormula) -> tuple[bool, bool]:
    if isinstance(f, Var):
        return f.name in plus, f.name in minus
    if isinstance(f, Neg):
        t, n = _supports(plus, minus, f.arg)
        return n, t
    lt, lf = _supports(plus, minus, f.left)
    rt, rf = _supports(plus, minus, f.right)
    if isinstance(f, And):
        return lt and rt, lf or rf
    return lt or rt, lf and rf


def extensions(model: BDModel, f: BDFormula) -> tuple[frozenset[str], frozenset[str]]:
    """``(|f|+, |f|-)`` computed by set algebra, memoised per model."""
    cached = model._cache.get(f)
    if cached is not None:
        return cached
    if isinstance(f, Var):
        out = (frozenset(w for w in model.worlds if f.name in model.vplus[w]),
               frozenset(w for w in model.worlds if f.name in model.vminus[w]))
    elif isinstance(f, Neg):
        t, n = extensions(model, f.arg)
        out = (n, t)
    else:
        lt, lf = extensions(model, f.left)
        rt, rf = extensions(model, f.right)
        out = (lt & rt, lf | rf) if isinstance(f, And) else (lt | rt, lf & rf)
    model._cache[f] = out
    return out


def extension(model: BDModel, f: BDFormula, kind: ExtensionKind | str) -> frozenset[str]:
    kind = ExtensionKind(kind)
    plus, minus = extensions(model, f)
    if kind is ExtensionKind.PLUS:
        return plus
    if kind is ExtensionKind.MINUS:
        return minus
    if kind is ExtensionKind.B:
        return plus - minus
    if kind is ExtensionKind.D:
        return minus - plus
    if kind is ExtensionKind.C:
        return plus & minus
    return model.all_worlds() - (plus | minus)


# -- four-valued valuations ---------------------------------------------------------

FOUR_VALUES = {"T": (True, False), "F": (False, True), "B": (True, True), "N": (False, False)}


def value4(f: BDFormula, valuation: Mapping[str, tuple[bool, bool]]) -> tuple[bool, bool]:
    """Truth/falsity support of ``f`` under a one-world valuation (missing vars are gaps)."""
    plus = frozenset(p for p, (t, _) in valuation.items() if t)
    minus = frozenset(p for p, (_, n) in valuation.items() if n)
    return _supports(plus, minus, f)


def valuations4(variables: Iterable[str]) -> Iterator[dict[str, tuple[bool, bool]]]:
    names = sorted(variables)
    for combo in product(FOUR_VALUES.values(), repeat=len(names)):
        yield dict(zip(names, combo))


def truth_table(f: BDFormula, variables: Iterable[str]) -> tuple[int, int]:
    """Bitset encoding of ``f`` over all 4^n valuations of ``variables``.

    Bit ``k`` of the first (second) integer is set iff valuation ``k``
    supports the truth (falsity) of ``f``.  Valuation ``k`` gives variable
    ``i`` truth bit ``(k >> 2i) & 1`` and falsity bit ``(k >> 2i + 1) & 1``.
    """
    names = sorted(variables)
    n = len(names)
    if n > MAX_ENTAILMENT_VARS:
        raise ResourceLimit(f"{n} variables exceeds the BD enumeration cap of {MAX_ENTAILMENT_VARS}")
    size = 1 << (2 * n)
    full = (1 << size) - 1

    def column(bit: int) -> int:
        # indices k with bit ``bit`` set: blocks of 2^bit ones every 2^(bit+1)
        half = 1 << bit
        width = half << 1
        block = ((1 << half) - 1) << half
        return block * (full // ((1 << width) - 1))

    base = {name: (column(2 * i), column(2 * i + 1)) for i, name in enumerate(names)}

    memo: dict[BDFormula, tuple[int, int]] = {}

    def go(g: BDFormula) -> tuple[int, int]:
        hit = memo.get(g)
        if hit is not None:
            return hit
        if isinstance(g, Var):
            out = base.get(g.name, (0, 0))
        elif isinstance(g, Neg):
            t, n_ = go(g.arg)
            out = (n_, t)
        else:
            lt, lf = go(g.left)
            rt, rf = go(g.right)
            out = (lt & rt, lf | rf) if isinstance(g, And) else (lt | rt, lf & rf)
        memo[g] = (out[0] & full, out[1] & full)
        return memo[g]

    return go(f)


@lru_cache(maxsize=1 << 16)
def bd_entails(f: BDFormula, g: BDFormula) -> bool:
    """``f |=BD g``: truth of ``f`` implies truth of ``g`` and falsity of ``g`` implies falsity of ``f``."""
    variables = props(f) | props(g)
    ft, ff = truth_table(f, variables)
    gt, gf = truth_table(g, variables)
    return ft & ~gt == 0 and gf & ~ff == 0


def bd_equiv(f: BDFormula, g: BDFormula) -> bool:
    return bd_entails(f, g) and bd_entails(g, f)


def dual_model(model: BDModel, weights=None, variables: Iterable[str] = ()):
    """Swap gluts and gaps for every variable, keeping pure values and weights.

    Satisfies ``|f|+ = W \\ |f|-*`` and ``|f|- = W \\ |f|+*`` for formulas over
    the model's vocabulary (extended with ``variables``).
    """
    vocab = model.variables | frozenset(variables)
    vplus, vminus = {}, {}
    for w in model.worlds:
        plus, minus = set(), set()
        for p in vocab:
            t, n = p in model.vplus[w], p in model.vminus[w]
            if t == n:
                t, n = not t, not n
            if t:
                plus.add(p)
            if n:
                minus.add(p)
        vplus[w], vminus[w] = plus, minus
    return BDModel(model.worlds, vplus, vminus, vocab), weights
