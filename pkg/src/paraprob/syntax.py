"""Abstract syntax, parser and printer for both formula layers.

Inner formulas (:class:`BDFormula`) are Belnap-Dunn formulas over ``-``,
``&`` and ``|``.  Outer formulas (:class:`OuterFormula`) are built from
modal atoms ``Pr{..}``, ``Bl{..}``, ``Db{..}``, ``Cf{..}``, ``Uc{..}`` (and
bare atoms in the plain Łukasiewicz dialect) with the connectives::

    -  paraconsistent negation      ~  Łukasiewicz negation     !  Delta
    -> implication   <-> equivalence   &  min   |  max
    (*) strong conjunction   (+) bounded sum   (-) truncated difference

All nodes are frozen dataclasses, so structural equality and hashing come
for free.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import ClassVar, Iterator, Union

from .errors import DialectError, ParseError

MODALITIES = ("Pr", "Bl", "Db", "Cf", "Uc")
FOUR_MODALITIES = ("Bl", "Db", "Cf", "Uc")


class Dialect(Enum):
    PM = "pm"
    FOUR = "four"
    LUK = "luk"


# -- inner layer ------------------------------------------------------------

class BDFormula:
    __slots__ = ()

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True)
class Var(BDFormula):
    name: str


@dataclass(frozen=True)
class Neg(BDFormula):
    arg: BDFormula


@dataclass(frozen=True)
class And(BDFormula):
    left: BDFormula
    right: BDFormula


@dataclass(frozen=True)
class Or(BDFormula):
    left: BDFormula
    right: BDFormula


# -- outer layer ------------------------------------------------------------

class OuterFormula:
    __slots__ = ()

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True)
class ModalAtom(OuterFormula):
    modality: str
    body: BDFormula


@dataclass(frozen=True)
class Atom(OuterFormula):
    """Bare propositional atom of the plain Łukasiewicz dialect."""
    name: str


@dataclass(frozen=True)
class _Unary(OuterFormula):
    arg: OuterFormula
    symbol: ClassVar[str] = ""


class ParNeg(_Unary):
    symbol = "-"


class LukNeg(_Unary):
    symbol = "~"


class Delta(_Unary):
    symbol = "!"


@dataclass(frozen=True)
class _Binary(OuterFormula):
    left: OuterFormula
    right: OuterFormula
    symbol: ClassVar[str] = ""


class Implies(_Binary):
    symbol = "->"


class Iff(_Binary):
    symbol = "<->"


class Conj(_Binary):
    symbol = "&"


class Disj(_Binary):
    symbol = "|"


class Strong(_Binary):
    symbol = "(*)"


class Plus(_Binary):
    symbol = "(+)"


class Minus(_Binary):
    symbol = "(-)"


UNARY = {c.symbol: c for c in (ParNeg, LukNeg, Delta)}
BINARY = {c.symbol: c for c in (Implies, Iff, Conj, Disj, Strong, Plus, Minus)}

Formula = Union[BDFormula, OuterFormula]


# -- tokenizer ----------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<op><->|->|\(\s*[+*-]\s*\)|[-~!&|(){}])|(?P<ident>[A-Za-z_][A-Za-z0-9_]*))"
)
_SPACE = re.compile(r"\s*")


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.items: list[tuple[str, str, int]] = []
        pos = 0
        while True:
            m = _SPACE.match(text, pos)
            pos = m.end()
            if pos >= len(text):
                break
            m = _TOKEN.match(text, pos)
            if m is None:
                raise ParseError(f"unexpected character {text[pos]!r}", _byte_offset(text, pos))
            if m.group("op") is not None:
                op = re.sub(r"\s+", "", m.group("op"))
                self.items.append(("op", op, m.start("op")))
            else:
                self.items.append(("ident", m.group("ident"), m.start("ident")))
            pos = m.end()
        self.i = 0

    def peek(self) -> tuple[str, str, int] | None:
        return self.items[self.i] if self.i < len(self.items) else None

    def peek_op(self) -> str | None:
        tok = self.peek()
        return tok[1] if tok is not None and tok[0] == "op" else None

    def offset(self) -> int:
        tok = self.peek()
        pos = tok[2] if tok is not None else len(self.text)
        return _byte_offset(self.text, pos)

    def advance(self) -> tuple[str, str, int]:
        tok = self.items[self.i]
        self.i += 1
        return tok

    def expect(self, op: str) -> None:
        if self.peek_op() != op:
            found = self.peek()
            what = repr(found[1]) if found else "end of input"
            raise ParseError(f"expected {op!r}, found {what}", self.offset())
        self.i += 1

    def fail(self, message: str):
        raise ParseError(message, self.offset())


def _check_identifier(name: str, toks: _Tokens, pos: int) -> None:
    for mod in MODALITIES:
        if name.startswith(mod):
            raise ParseError(f"reserved-word variable name {name!r}",
                             _byte_offset(toks.text, pos))


# -- inner parser --------------------------------------------------------------

def _bd_or(toks: _Tokens) -> BDFormula:
    left = _bd_and(toks)
    while toks.peek_op() == "|":
        toks.advance()
        left = Or(left, _bd_and(toks))
    return left


def _bd_and(toks: _Tokens) -> BDFormula:
    left = _bd_unary(toks)
    while toks.peek_op() == "&":
        toks.advance()
        left = And(left, _bd_unary(toks))
    return left


def _bd_unary(toks: _Tokens) -> BDFormula:
    tok = toks.peek()
    if tok is None:
        toks.fail("unexpected end of input")
    kind, value, pos = tok
    if kind == "op" and value == "-":
        toks.advance()
        return Neg(_bd_unary(toks))
    if kind == "op" and value == "(":
        toks.advance()
        inner = _bd_or(toks)
        toks.expect(")")
        return inner
    if kind == "ident":
        _check_identifier(value, toks, pos)
        toks.advance()
        return Var(value)
    toks.fail(f"unexpected {value!r}")


def parse_bd(text: str) -> BDFormula:
    """Parse an inner formula; ``-`` binds tighter than ``&``, ``&`` tighter than ``|``."""
    toks = _Tokens(text)
    f = _bd_or(toks)
    if toks.peek() is not None:
        toks.fail(f"unexpected {toks.peek()[1]!r}")
    return f


# -- outer parser ----------------------------------------------------------------

def _o_iff(toks: _Tokens) -> OuterFormula:
    left = _o_imp(toks)
    if toks.peek_op() == "<->":
        toks.advance()
        return Iff(left, _o_iff(toks))
    return left


def _o_imp(toks: _Tokens) -> OuterFormula:
    left = _o_lattice(toks)
    if toks.peek_op() == "->":
        toks.advance()
        return Implies(left, _o_imp(toks))
    return left


def _o_lattice(toks: _Tokens) -> OuterFormula:
    left = _o_additive(toks)
    while toks.peek_op() in ("&", "|"):
        cls = BINARY[toks.advance()[1]]
        left = cls(left, _o_additive(toks))
    return left


def _o_additive(toks: _Tokens) -> OuterFormula:
    left = _o_strong(toks)
    while toks.peek_op() in ("(+)", "(-)"):
        cls = BINARY[toks.advance()[1]]
        left = cls(left, _o_strong(toks))
    return left


def _o_strong(toks: _Tokens) -> OuterFormula:
    left = _o_unary(toks)
    while toks.peek_op() == "(*)":
        toks.advance()
        left = Strong(left, _o_unary(toks))
    return left


def _o_unary(toks: _Tokens) -> OuterFormula:
    tok = toks.peek()
    if tok is None:
        toks.fail("unexpected end of input")
    kind, value, pos = tok
    if kind == "op" and value in UNARY:
        toks.advance()
        return UNARY[value](_o_unary(toks))
    if kind == "op" and value == "(":
        toks.advance()
        inner = _o_iff(toks)
        toks.expect(")")
        return inner
    if kind == "ident":
        if value in MODALITIES:
            toks.advance()
            toks.expect("{")
            body = _bd_or(toks)
            toks.expect("}")
            return ModalAtom(value, body)
        _check_identifier(value, toks, pos)
        toks.advance()
        return Atom(value)
    toks.fail(f"unexpected {value!r}")


def parse_outer(text: str, dialect: Dialect | str = Dialect.LUK) -> OuterFormula:
    """Parse an outer formula and enforce the dialect restrictions."""
    dialect = Dialect(dialect)
    toks = _Tokens(text)
    f = _o_iff(toks)
    if toks.peek() is not None:
        toks.fail(f"unexpected {toks.peek()[1]!r}")
    check_dialect(f, dialect)
    return f


def check_dialect(f: OuterFormula, dialect: Dialect | str) -> None:
    """Raise :class:`DialectError` naming the first node the dialect forbids."""
    dialect = Dialect(dialect)
    for node in walk(f):
        if isinstance(node, ModalAtom):
            if dialect is Dialect.PM and node.modality != "Pr":
                raise DialectError(f"modality {node.modality} not allowed in PM dialect: {render(node)}", node)
            if dialect is Dialect.FOUR and node.modality == "Pr":
                raise DialectError(f"modality Pr not allowed in Four dialect: {render(node)}", node)
        elif isinstance(node, Atom) and dialect is not Dialect.LUK:
            raise DialectError(f"bare atom {node.name!r} only allowed in the luk dialect", node)
        elif isinstance(node, ParNeg) and dialect is Dialect.FOUR:
            raise DialectError(f"ParNeg forbidden in Four dialect: {render(node)}", node)


# -- printing -------------------------------------------------------------------

_BD_PREC = {Or: 1, And: 2, Neg: 3, Var: 4}
_OUTER_PREC = {Iff: 1, Implies: 2, Conj: 3, Disj: 3, Plus: 4, Minus: 4, Strong: 5,
               ParNeg: 6, LukNeg: 6, Delta: 6, ModalAtom: 7, Atom: 7}
_RIGHT_ASSOC = (Iff, Implies)


def _paren(text: str, needed: bool) -> str:
    return f"({text})" if needed else text


def _render_bd(f: BDFormula) -> str:
    if isinstance(f, Var):
        return f.name
    if isinstance(f, Neg):
        return "-" + _paren(_render_bd(f.arg), _BD_PREC[type(f.arg)] < 3)
    prec = _BD_PREC[type(f)]
    op = " & " if isinstance(f, And) else " | "
    left = _paren(_render_bd(f.left), _BD_PREC[type(f.left)] < prec)
    right = _paren(_render_bd(f.right), _BD_PREC[type(f.right)] <= prec)
    return left + op + right


def _render_outer(f: OuterFormula) -> str:
    if isinstance(f, ModalAtom):
        return f"{f.modality}{{{_render_bd(f.body)}}}"
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, _Unary):
        return f.symbol + _paren(_render_outer(f.arg), _OUTER_PREC[type(f.arg)] < 6)
    prec = _OUTER_PREC[type(f)]
    lp, rp = _OUTER_PREC[type(f.left)], _OUTER_PREC[type(f.right)]
    if isinstance(f, _RIGHT_ASSOC):
        left_needs, right_needs = lp <= prec, rp < prec
    else:
        left_needs, right_needs = lp < prec, rp <= prec
    return (_paren(_render_outer(f.left), left_needs) + f" {f.symbol} "
            + _paren(_render_outer(f.right), right_needs))


def render(f: Formula) -> str:
    """Minimal-parenthesis text that :func:`parse_bd`/:func:`parse_outer` read back."""
    if isinstance(f, BDFormula):
        return _render_bd(f)
    return _render_outer(f)


# -- structural utilities -------------------------------------------------------

def children(f: Formula) -> tuple:
    if isinstance(f, (Var, Atom)):
        return ()
    if isinstance(f, ModalAtom):
        return ()
    if isinstance(f, (Neg, _Unary)):
        return (f.arg,)
    return (f.left, f.right)


def walk(f: Formula) -> Iterator[Formula]:
    """Pre-order traversal of one layer (does not descend into modal atom bodies)."""
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(children(node)))


def modal_atoms(f: OuterFormula) -> list[ModalAtom]:
    """Distinct modal atoms in first-occurrence order."""
    seen: dict[ModalAtom, None] = {}
    for node in walk(f):
        if isinstance(node, ModalAtom):
            seen.setdefault(node)
    return list(seen)


def bd_bodies(f: Formula) -> list[BDFormula]:
    if isinstance(f, BDFormula):
        return [f]
    return [a.body for a in modal_atoms(f)]


def props(f: Formula) -> frozenset[str]:
    """Propositional variables occurring in ``f`` (inside modal atoms for outer formulas)."""
    out = set()
    for body in bd_bodies(f):
        out.update(n.name for n in walk(body) if isinstance(n, Var))
    return frozenset(out)


def lits(f: Formula) -> frozenset[BDFormula]:
    """Literal subformulas: variables and negated variables."""
    out = set()
    for body in bd_bodies(f):
        for n in walk(body):
            if isinstance(n, Var) or (isinstance(n, Neg) and isinstance(n.arg, Var)):
                out.add(n)
    return frozenset(out)


def subformulas(f: Formula) -> frozenset[Formula]:
    """All subformulas of the same layer as ``f``."""
    return frozenset(walk(f))


def size(f: Formula) -> int:
    """Node count including the bodies of modal atoms."""
    total = 0
    for node in walk(f):
        total += 1
        if isinstance(node, ModalAtom):
            total += sum(1 for _ in walk(node.body))
    return total


def connective_depth(f: OuterFormula) -> int:
    kids = children(f)
    return 1 + max(map(connective_depth, kids)) if kids else 0


def bd_depth(f: BDFormula) -> int:
    kids = children(f)
    return 1 + max(map(bd_depth, kids)) if kids else 0


def map_atoms(f: OuterFormula, fn) -> OuterFormula:
    """Rebuild ``f`` replacing every atom node ``a`` with ``fn(a)``."""
    if isinstance(f, (ModalAtom, Atom)):
        return fn(f)
    if isinstance(f, _Unary):
        return type(f)(map_atoms(f.arg, fn))
    return type(f)(map_atoms(f.left, fn), map_atoms(f.right, fn))
