"""Exact feasibility of linear systems with strict and non-strict constraints.

Strict constraints ``t < 0`` are handled symbolically as ``t + eps <= 0``
where ``eps`` is a positive infinitesimal; right-hand sides live in Q(eps)
and are compared lexicographically.  A phase-1 simplex with Bland's rule
decides feasibility over that ordered field.  A feasible verdict carries a
concrete rational assignment obtained by substituting a small enough
rational for ``eps``; the assignment is re-checked before it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Union

try:  # exact rationals in C when available; the results are identical
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    _Q = Fraction

Number = Union[int, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)
QZERO = _Q(0)
QONE = _Q(1)


def _q(x) -> "_Q":
    x = Fraction(x)
    return _Q(x.numerator, x.denominator)


def _frac(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


class AffineTerm:
    """``constant + sum(coeff * var)`` with exact rational coefficients."""

    __slots__ = ("constant", "coeffs", "_hash")

    def __init__(self, constant: Number = 0, coeffs: Mapping[str, Number] | None = None):
        self.constant = constant if type(constant) is Fraction else Fraction(constant)
        items = {}
        for name, c in (coeffs or {}).items():
            if type(c) is not Fraction:
                c = Fraction(c)
            if c:
                items[name] = c
        self.coeffs = items
        self._hash = None

    @classmethod
    def var(cls, name: str) -> "AffineTerm":
        return cls(0, {name: 1})

    @staticmethod
    def lift(x) -> "AffineTerm":
        return x if isinstance(x, AffineTerm) else AffineTerm(x)

    def __add__(self, other):
        other = AffineTerm.lift(other)
        coeffs = dict(self.coeffs)
        for name, c in other.coeffs.items():
            coeffs[name] = coeffs.get(name, ZERO) + c
        return AffineTerm(self.constant + other.constant, coeffs)

    __radd__ = __add__

    def __neg__(self):
        return AffineTerm(-self.constant, {n: -c for n, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-AffineTerm.lift(other))

    def __rsub__(self, other):
        return AffineTerm.lift(other) - self

    def __mul__(self, k: Number):
        k = Fraction(k)
        return AffineTerm(self.constant * k, {n: c * k for n, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, AffineTerm):
            if isinstance(other, (int, Fraction)):
                return not self.coeffs and self.constant == other
            return NotImplemented
        return self.constant == other.constant and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.constant, frozenset(self.coeffs.items())))
        return self._hash

    def variables(self) -> set[str]:
        return set(self.coeffs)

    def is_constant(self) -> bool:
        return not self.coeffs

    def evaluate(self, assignment: Mapping[str, Number]) -> Fraction:
        return self.constant + sum((c * Fraction(assignment[n]) for n, c in self.coeffs.items()), ZERO)

    def __str__(self):
        terms = [(c, name if abs(c) == 1 else f"{abs(c)}*{name}") for name, c in sorted(self.coeffs.items())]
        if self.constant or not terms:
            terms.insert(0, (self.constant, str(abs(self.constant))))
        c0, body0 = terms[0]
        out = body0 if c0 >= 0 else f"-{body0}"
        for c, body in terms[1:]:
            out += f" + {body}" if c > 0 else f" - {body}"
        return out

    __repr__ = __str__


RELATIONS = ("<=", "<", "=")


@dataclass(frozen=True)
class LinConstraint:
    lhs: AffineTerm
    relation: str
    rhs: AffineTerm

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise ValueError(f"relation must be one of {RELATIONS}")
        object.__setattr__(self, "lhs", AffineTerm.lift(self.lhs))
        object.__setattr__(self, "rhs", AffineTerm.lift(self.rhs))

    def normalized(self) -> tuple[AffineTerm, str]:
        """``(t, rel)`` with the constraint equivalent to ``t rel 0``."""
        return self.lhs - self.rhs, self.relation

    def q_normalized(self):
        """``normalized`` as solver-native rationals: ``(constant, ((var, coeff), ...), rel)``."""
        cached = self.__dict__.get("_qnorm")
        if cached is None:
            t = self.lhs - self.rhs
            cached = (_q(t.constant), tuple((n, _q(c)) for n, c in sorted(t.coeffs.items())), self.relation)
            object.__setattr__(self, "_qnorm", cached)
        return cached

    def variables(self) -> set[str]:
        return self.lhs.variables() | self.rhs.variables()

    def holds(self, assignment: Mapping[str, Number]) -> bool:
        const, terms, rel = self.q_normalized()
        v = const + sum((c * _q(assignment[n]) for n, c in terms), QZERO)
        return v <= 0 if rel == "<=" else v < 0 if rel == "<" else v == 0

    def __str__(self):
        return f"{self.lhs} {self.relation} {self.rhs}"


def le(a, b) -> LinConstraint:
    return LinConstraint(AffineTerm.lift(a), "<=", AffineTerm.lift(b))


def lt(a, b) -> LinConstraint:
    return LinConstraint(AffineTerm.lift(a), "<", AffineTerm.lift(b))


def ge(a, b) -> LinConstraint:
    return le(b, a)


def gt(a, b) -> LinConstraint:
    return lt(b, a)


def eq(a, b) -> LinConstraint:
    return LinConstraint(AffineTerm.lift(a), "=", AffineTerm.lift(b))


@dataclass(frozen=True)
class Feasible:
    assignment: dict[str, Fraction]
    rows: int = 0

    def __bool__(self):
        return True


@dataclass(frozen=True)
class Infeasible:
    constraints: tuple = field(default=(), compare=False, repr=False)

    def __bool__(self):
        return False


Feasibility = Union[Feasible, Infeasible]
Bounds = Mapping[str, tuple[Optional[Number], Optional[Number]]]


def dump_constraints(system: Iterable[LinConstraint]) -> str:
    return "\n".join(str(c) for c in system)


# -- simplex over Q(eps) ------------------------------------------------------------------------

def _lex_less(a0, a1, b0, b1) -> bool:
    return a0 < b0 or (a0 == b0 and a1 < b1)


class _Simplex:
    """Sparse phase-1 tableau; right-hand sides are pairs ``b0 + b1*eps``."""

    def __init__(self, rows: list[dict[int, Fraction]], rhs0: list[Fraction], rhs1: list[Fraction],
                 basis: list[int], cost: dict[int, Fraction]):
        self.A = rows
        self.b0 = rhs0
        self.b1 = rhs1
        self.basis = basis
        # reduced costs d and objective value v with objective = v + d.y
        d = dict(cost)
        self.v0 = QZERO
        self.v1 = QZERO
        for i, j in enumerate(basis):
            cj = cost.get(j)
            if cj:
                for k, a in self.A[i].items():
                    d[k] = d.get(k, QZERO) - cj * a
                self.v0 += cj * self.b0[i]
                self.v1 += cj * self.b1[i]
        self.d = {k: v for k, v in d.items() if v}

    def pivot(self, r: int, j: int) -> None:
        prow = self.A[r]
        piv = prow[j]
        if piv != 1:
            inv = 1 / piv
            for k in prow:
                prow[k] *= inv
            self.b0[r] *= inv
            self.b1[r] *= inv
        items = list(prow.items())
        br0, br1 = self.b0[r], self.b1[r]
        for i, row in enumerate(self.A):
            if i == r:
                continue
            f = row.get(j)
            if f:
                for k, a in items:
                    v = row.get(k, QZERO) - f * a
                    if v:
                        row[k] = v
                    else:
                        del row[k]
                self.b0[i] -= f * br0
                self.b1[i] -= f * br1
        f = self.d.get(j)
        if f:
            d = self.d
            for k, a in items:
                v = d.get(k, QZERO) - f * a
                if v:
                    d[k] = v
                else:
                    del d[k]
            self.v0 += f * br0
            self.v1 += f * br1
        self.basis[r] = j

    def solve(self) -> None:
        while True:
            negative = [k for k, v in self.d.items() if v < 0]
            if not negative:
                return
            entering = min(negative)
            best = None
            for i, row in enumerate(self.A):
                a = row.get(entering)
                if a is not None and a > 0:
                    r0, r1 = self.b0[i] / a, self.b1[i] / a
                    if best is None or _lex_less(r0, r1, best[0], best[1]) or (
                            r0 == best[0] and r1 == best[1] and self.basis[i] < self.basis[best[2]]):
                        best = (r0, r1, i)
            if best is None:
                # phase-1 objective is bounded below by 0
                raise AssertionError("unbounded phase-1 problem")
            self.pivot(best[2], entering)


def feasible(system: Iterable[LinConstraint], bounds: Bounds | None = None) -> Feasibility:
    """Decide the system exactly; variables without bounds are free."""
    return _solve(list(system), dict(bounds or {}))


def vertex_solution(system: Iterable[LinConstraint], bounds: Bounds | None = None) -> Feasibility:
    """A basic feasible solution: at most ``rows`` variables are nonzero.

    All variables must have lower bound 0 (missing bounds default to [0, inf)).
    """
    system = list(system)
    bounds = dict(bounds or {})
    names = set()
    for c in system:
        names |= c.variables()
    for n in names:
        lo, hi = bounds.get(n, (0, None))
        if lo is None or lo != 0:
            raise ValueError(f"vertex_solution needs lower bound 0 for {n}")
        bounds[n] = (0, hi)
    return _solve(system, bounds)


def _solve(system: list[LinConstraint], bounds: dict) -> Feasibility:
    names: list[str] = []
    seen = set()
    for c in system:
        for n in sorted(c.variables()):
            if n not in seen:
                seen.add(n)
                names.append(n)
    for n in bounds:
        if n not in seen:
            seen.add(n)
            names.append(n)

    # x = offset + sum(sign * y_col) with y >= 0
    columns: dict[str, tuple] = {}
    ncols = 0
    rows: list[tuple[dict, str, object, object]] = []  # a.y rel r0 + r1*eps
    for n in names:
        lo, hi = bounds.get(n, (None, None))
        lo = None if lo is None else _q(lo)
        hi = None if hi is None else _q(hi)
        if lo is not None:
            columns[n] = (lo, ((ncols, 1),))
            if hi is not None:
                rows.append(({ncols: QONE}, "<=", hi - lo, QZERO))
            ncols += 1
        elif hi is not None:
            columns[n] = (hi, ((ncols, -1),))
            ncols += 1
        else:
            columns[n] = (QZERO, ((ncols, 1), (ncols + 1, -1)))
            ncols += 2
    nstruct = ncols

    for c in system:
        const, terms, rel = c.q_normalized()
        coeffs: dict[int, object] = {}
        for n, a in terms:
            off, cols = columns[n]
            const += a * off
            for col, sign in cols:
                coeffs[col] = coeffs.get(col, QZERO) + (a if sign > 0 else -a)
        coeffs = {k: v for k, v in coeffs.items() if v}
        if rel == "<":
            rows.append((coeffs, "<=", -const, -QONE))
        else:
            rows.append((coeffs, rel, -const, QZERO))

    # rows without variables are decided directly
    kept = []
    for coeffs, rel, r0, r1 in rows:
        if not coeffs:
            ok = (r0 == 0 and r1 == 0) if rel == "=" else not _lex_less(r0, r1, QZERO, QZERO)
            if not ok:
                return Infeasible(tuple(system))
            continue
        kept.append((coeffs, rel, r0, r1))

    A: list[dict] = []
    b0: list = []
    b1: list = []
    basis: list[int] = []
    artificial_rows = []
    next_col = nstruct
    for coeffs, rel, r0, r1 in kept:
        row = dict(coeffs)
        slack = None
        if rel == "<=":
            slack = next_col
            row[slack] = QONE
            next_col += 1
        if _lex_less(r0, r1, QZERO, QZERO):
            row = {k: -v for k, v in row.items()}
            r0, r1 = -r0, -r1
            slack = None
        A.append(row)
        b0.append(r0)
        b1.append(r1)
        basis.append(-1 if slack is None else slack)
        if slack is None:
            artificial_rows.append(len(A) - 1)
    total = next_col

    cost: dict[int, object] = {}
    for a_idx, i in enumerate(artificial_rows):
        col = total + a_idx
        A[i][col] = QONE
        basis[i] = col
        cost[col] = QONE

    tab = _Simplex(A, b0, b1, basis, cost)
    tab.solve()
    if tab.v0 != 0 or tab.v1 != 0:
        return Infeasible(tuple(system))

    y0 = [QZERO] * (total + len(artificial_rows))
    y1 = list(y0)
    for i, j in enumerate(tab.basis):
        y0[j] = tab.b0[i]
        y1[j] = tab.b1[i]

    # eps := delta, at most half of every slack that shrinks with eps
    delta = QONE
    for k in range(total):
        if y0[k] > 0 and y1[k] < 0:
            delta = min(delta, y0[k] / -y1[k] / 2)
    for coeffs, rel, r0, r1 in kept:
        if rel == "=":
            continue
        s0 = r0 - sum((v * y0[k] for k, v in coeffs.items()), QZERO)
        s1 = r1 - sum((v * y1[k] for k, v in coeffs.items()), QZERO)
        if s0 > 0 and s1 < 0:
            delta = min(delta, s0 / -s1 / 2)

    y = [y0[k] + y1[k] * delta for k in range(nstruct)]
    assignment = {}
    for n in names:
        off, cols = columns[n]
        assignment[n] = _frac(off + sum((y[col] if sign > 0 else -y[col] for col, sign in cols), QZERO))

    for c in system:
        if not c.holds(assignment):
            raise AssertionError(f"witness violates {c}")
    for n, (lo, hi) in bounds.items():
        v = assignment[n]
        if (lo is not None and v < lo) or (hi is not None and v > hi):
            raise AssertionError(f"witness violates bound on {n}")
    return Feasible(assignment, rows=len(kept))
