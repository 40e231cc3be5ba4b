"""Text format for weighted BD models.

One directive per line, ``#`` starts a comment::

    world w0 { +p -p }
    world w1 { -p -q }
    weight w0 2/3
    weight w1 1/3

``+p`` puts the world in v+(p), ``-p`` in v-(p); an absent variable is a gap.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .bd import BDModel
from .errors import ModelError

_WORLD = re.compile(r"world\s+(\S+?)\s*\{([^}]*)\}\s*$")
_WEIGHT = re.compile(r"weight\s+(\S+)\s+(\S+)\s*$")
_LITERAL = re.compile(r"([+-])([A-Za-z_][A-Za-z0-9_]*)$")


def parse_rational(text: str) -> Fraction:
    if not re.fullmatch(r"-?\d+(/\d+)?", text):
        raise ModelError(f"not a rational: {text!r}")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ModelError(f"zero denominator in {text!r}") from None


def parse_model(text: str) -> tuple[BDModel, dict[str, Fraction] | None]:
    """Return the model and its weights (``None`` when there are no weight lines)."""
    worlds: list[str] = []
    vplus: dict[str, set[str]] = {}
    vminus: dict[str, set[str]] = {}
    weights: dict[str, Fraction] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _WORLD.match(line)
        if m:
            wid = m.group(1)
            if wid in vplus:
                raise ModelError(f"line {lineno}: world {wid!r} declared twice")
            worlds.append(wid)
            vplus[wid], vminus[wid] = set(), set()
            for item in m.group(2).split():
                lm = _LITERAL.match(item)
                if not lm:
                    raise ModelError(f"line {lineno}: bad literal {item!r}")
                (vplus if lm.group(1) == "+" else vminus)[wid].add(lm.group(2))
            continue
        m = _WEIGHT.match(line)
        if m:
            wid = m.group(1)
            if wid in weights:
                raise ModelError(f"line {lineno}: weight for {wid!r} given twice")
            weights[wid] = parse_rational(m.group(2))
            continue
        raise ModelError(f"line {lineno}: cannot parse {raw.strip()!r}")
    model = BDModel(worlds, vplus, vminus)
    if not weights:
        return model, None
    unknown = set(weights) - set(worlds)
    if unknown:
        raise ModelError(f"weights for unknown worlds {sorted(unknown)}")
    full = {w: weights.get(w, Fraction(0)) for w in worlds}
    if any(v < 0 for v in full.values()) or sum(full.values()) != 1:
        raise ModelError("weights must be non-negative and sum to 1")
    return model, full


def dump_model(model: BDModel, weights=None) -> str:
    lines = []
    for w in model.worlds:
        lits = [f"+{p}" for p in sorted(model.vplus[w])] + [f"-{p}" for p in sorted(model.vminus[w])]
        lines.append(f"world {w} {{ {' '.join(lits)} }}" if lits else f"world {w} {{ }}")
    if weights is not None:
        for w in model.worlds:
            lines.append(f"weight {w} {weights[w]}")
    return "\n".join(lines) + "\n"
