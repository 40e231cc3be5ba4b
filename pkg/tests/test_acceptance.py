"""Acceptance gate: one check per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines as they are
produced, or ``python3 tests/test_acceptance.py`` to run them without pytest.
A summary section is printed at the end of every pytest run.
"""

from __future__ import annotations

import random
import sys
import time
from fractions import Fraction as F
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from conftest import record  # noqa: E402
from fourier_motzkin import fm_feasible  # noqa: E402
from helpers import (COMMUTATIONS, UNARY_FOUR, UNARY_PM, four_atom, golden, pm_atom, rand_model, rand_outer,  # noqa: E402
                     rand_system)
from paraprob.bd import dual_model, truth_table  # noqa: E402
from paraprob.decision import (Invalid, Sat, Valid, decide_sat_four, decide_sat_pm, decide_valid_four,  # noqa: E402
                               decide_valid_pm)
from paraprob.embeddings import nnf, pm_to_four, to_pm  # noqa: E402
from paraprob.hilbert import bd_formulas, generate_instances  # noqa: E402
from paraprob.linear import feasible  # noqa: E402
from paraprob.luk import (PairValue, eval_four, eval_pm, evaluate_pair, induced_table, verify_four_axioms,  # noqa: E402
                          verify_pm_axioms)
from paraprob.syntax import BINARY, FOUR_MODALITIES, Dialect, ModalAtom, parse_outer  # noqa: E402
from paraprob.tableau import Closed, Open, atoms_of, prove_luk_valid  # noqa: E402

# Sat/Invalid verdicts collected by the suites below, re-checked by criterion 7.
WITNESSES: list = []


def _keep(formula, dialect, verdict):
    if isinstance(verdict, (Sat, Invalid)):
        WITNESSES.append((formula, dialect, verdict))


# -- 1. golden evaluation ---------------------------------------------------------------------

GOLDEN = [
    ("pm", "Pr{p | q}", PairValue(F(2, 3), F(1, 3))),
    ("pm", "Pr{p}", PairValue(F(2, 3), F(1))),
    ("four", "Bl{p | q}", F(2, 3)),
    ("four", "Db{p | q}", F(1, 3)),
    ("four", "Cf{p | q}", F(0)),
    ("four", "Uc{p | q}", F(0)),
    ("four", "Bl{p}", F(0)),
    ("four", "Uc{p}", F(0)),
    ("four", "Cf{p}", F(2, 3)),
    ("four", "Db{p}", F(1, 3)),
]


def test_criterion_1_golden_suite():
    start = time.perf_counter()
    model, weights = golden()
    wrong = []
    for logic, text, expected in GOLDEN:
        if logic == "pm":
            got = eval_pm(model, weights, parse_outer(text, Dialect.PM))
        else:
            got = eval_four(model, weights, parse_outer(text, Dialect.FOUR))
        if got != expected:
            wrong.append(f"{text}={got}")
    elapsed = time.perf_counter() - start
    ok = not wrong and elapsed < 1
    record(1, "golden evaluation suite", ok, f"{len(GOLDEN) - len(wrong)}/{len(GOLDEN)} exact, {elapsed:.3f}s")
    assert ok, wrong


# -- 2. tableau suite -------------------------------------------------------------------------

TABLEAU_CLOSED = [
    "a -> (b -> a)",
    "(a -> b) -> ((b -> c) -> (a -> c))",
    "((a -> b) -> b) -> ((b -> a) -> a)",
    "(~b -> ~a) -> (a -> b)",
    "!a -> a",
    "!a -> !!a",
    "!(a | b) -> (!a | !b)",
    "!a | ~!a",
    *COMMUTATIONS,
]
TABLEAU_OPEN = ["a", "(a (+) a) -> a", "a | ~a"]


def test_criterion_2_tableau_suite():
    start = time.perf_counter()
    failures = []
    for text in TABLEAU_CLOSED:
        if not isinstance(prove_luk_valid(parse_outer(text)), Closed):
            failures.append(f"not closed: {text}")
    for text in TABLEAU_OPEN:
        phi = parse_outer(text)
        result = prove_luk_valid(phi)
        if not isinstance(result, Open):
            failures.append(f"not open: {text}")
            continue
        values = result.atom_values(atoms_of(phi))
        if not evaluate_pair(phi, values.__getitem__).truth < 1:
            failures.append(f"witness does not refute: {text}")
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 10
    record(2, "tableau suite", ok,
           f"{len(TABLEAU_CLOSED)} closed, {len(TABLEAU_OPEN)} open, {len(failures)} failures, {elapsed:.2f}s")
    assert ok, failures


# -- 3. embedding agreement -------------------------------------------------------------------

INNER = bd_formulas(["p", "q"], 1)
PM_ATOMS = [ModalAtom("Pr", f) for f in INNER]
FOUR_ATOMS = [ModalAtom(m, f) for m in FOUR_MODALITIES for f in INNER]
BINARIES = list(BINARY.values())


class Family:
    """Outer formulas of connective depth at most 2, addressed by index.

    Layer ``k`` lists layer ``k-1``, then every unary connective applied to it,
    then every binary connective applied to every ordered pair from it.  The
    depth-2 layer is far too large to enumerate, so formulas are read off by
    index (mixed radix) instead of being materialised.
    """

    def __init__(self, atoms, unary):
        self.unary = unary
        self.layer1 = list(atoms)
        self.layer1 += [u(a) for u in unary for a in atoms]
        self.layer1 += [b(x, y) for b in BINARIES for x in atoms for y in atoms]
        n = len(self.layer1)
        self.size = n + len(unary) * n + len(BINARIES) * n * n

    def __getitem__(self, k: int):
        layer, n = self.layer1, len(self.layer1)
        if k < n:
            return layer[k]
        k -= n
        if k < len(self.unary) * n:
            return self.unary[k // n](layer[k % n])
        k -= len(self.unary) * n
        b, rest = divmod(k, n * n)
        return BINARIES[b](layer[rest // n], layer[rest % n])

    def capped(self, shallow: int, deep: int):
        """``shallow`` formulas striding depth <= 1, ``deep`` striding all of depth <= 2."""
        n = len(self.layer1)
        out = [self.layer1[(i * n) // shallow] for i in range(shallow)]
        step = 1_000_003  # prime, so the walk does not line up with the radix
        out += [self[(i * step * 7919) % self.size] for i in range(deep)]
        return list(dict.fromkeys(out))


def test_criterion_3_embedding_agreement():
    start = time.perf_counter()
    pm_family = Family(PM_ATOMS, UNARY_PM).capped(100, 220)
    four_family = Family(FOUR_ATOMS, UNARY_FOUR).capped(100, 220)
    disagreements = []
    valid = 0
    for alpha in pm_family:
        left = decide_valid_pm(alpha)
        right = decide_valid_four(pm_to_four(alpha))
        _keep(alpha, "pm", left)
        valid += left.positive
        if left.positive != right.positive:
            disagreements.append(alpha)
    for beta in four_family:
        embed = decide_valid_four(beta)
        direct = decide_valid_four(beta, route="direct")
        via_pm = decide_valid_pm(to_pm(beta))
        _keep(beta, "four", embed)
        _keep(beta, "four", direct)
        valid += embed.positive
        if not embed.positive == direct.positive == via_pm.positive:
            disagreements.append(beta)
    elapsed = time.perf_counter() - start
    total = len(pm_family) + len(four_family)
    ok = not disagreements and total >= 300 and elapsed < 600
    record(3, "embedding agreement", ok,
           f"{total} formulas, {valid} valid, {len(disagreements)} disagreements, {elapsed:.1f}s")
    assert ok, disagreements[:5]


# -- 4. nnf and dual-model identities ---------------------------------------------------------

def test_criterion_4_nnf_and_dual():
    start = time.perf_counter()
    rng = random.Random(404)
    bad = []
    for _ in range(1000):
        alpha = rand_outer(rng, pm_atom(), depth=3)
        model, w = rand_model(rng)
        if eval_pm(model, w, alpha) != eval_pm(model, w, nnf(alpha)):
            bad.append(("nnf", alpha))
    for _ in range(1000):
        alpha = rand_outer(rng, pm_atom(), depth=3)
        model, w = rand_model(rng)
        e = eval_pm(model, w, alpha)
        dual, dw = dual_model(model, w)
        if eval_pm(dual, dw, alpha) != PairValue(1 - e.falsity, 1 - e.truth):
            bad.append(("dual", alpha))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60
    record(4, "nnf and dual-model identities", ok, f"2000 pairs, {len(bad)} mismatches, {elapsed:.1f}s")
    assert ok, bad[:5]


# -- 5. Hilbert soundness audit ---------------------------------------------------------------

def test_criterion_5_axiom_instances_valid():
    start = time.perf_counter()
    instances = generate_instances(["p", "q"], 1)
    failures = [str(i) for i in instances
                if not (isinstance(decide_valid_four(i.formula), Valid)
                        and isinstance(decide_valid_four(i.formula, route="direct"), Valid))]
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 600
    record(5, "axiom instances are valid", ok,
           f"{len(instances)} instances, both routes, {len(failures)} failures, {elapsed:.1f}s")
    assert ok, failures[:5]


# -- 6. measure verifiers ---------------------------------------------------------------------

def probe_set():
    """Depth-2 closure of {p, q} under -, &, |, one formula per truth table."""
    out = {}
    for f in bd_formulas(["p", "q"], 2):
        out.setdefault(truth_table(f, ["p", "q"]), f)
    return list(out.values())


def test_criterion_6_measure_verifiers():
    start = time.perf_counter()
    rng = random.Random(606)
    probe = probe_set()
    violations = []
    for _ in range(1000):
        model, w = rand_model(rng, max_worlds=4)
        table = induced_table(model, w)
        violations += verify_pm_axioms(model, table, probe)
        violations += verify_four_axioms(model, table, probe)
    elapsed = time.perf_counter() - start
    ok = not violations and elapsed < 60
    record(6, "measure verifiers", ok,
           f"1000 models, probe of {len(probe)}, {len(violations)} violations, {elapsed:.1f}s")
    assert ok, violations[:5]


# -- 7. witness integrity ---------------------------------------------------------------------

def _witness_ok(formula, dialect, verdict) -> bool:
    if dialect == "pm":
        value = eval_pm(verdict.model, verdict.weights, formula)
        top = value.truth
    else:
        value = top = eval_four(verdict.model, verdict.weights, formula)
    if value != verdict.value or sum(verdict.weights.values()) != 1:
        return False
    return top < 1 if isinstance(verdict, Invalid) else top == 1


def test_criterion_7_witness_integrity():
    rng = random.Random(707)
    for _ in range(150):
        alpha = rand_outer(rng, pm_atom(depth=1), depth=2)
        _keep(alpha, "pm", decide_valid_pm(alpha))
        _keep(alpha, "pm", decide_sat_pm(alpha))
        beta = rand_outer(rng, four_atom(depth=1), depth=2, unary=UNARY_FOUR)
        for route in ("embed", "direct"):
            _keep(beta, "four", decide_valid_four(beta, route=route))
            _keep(beta, "four", decide_sat_four(beta, route=route))
    bad_values = [f for f, d, v in WITNESSES if not _witness_ok(f, d, v)]
    bad_sparsity = [v for _, _, v in WITNESSES
                    if v.stats.nonzero > v.stats.branch_rows + v.stats.atoms + 1]
    ok = not bad_values and not bad_sparsity and len(WITNESSES) > 100
    record(7, "witness integrity", ok,
           f"{len(WITNESSES)} witnesses, {len(bad_values)} bad values, "
           f"{len(bad_sparsity)} over the nonzero bound")
    assert ok, (bad_values[:3], bad_sparsity[:3])


# -- 8. LP cross-validation -------------------------------------------------------------------

def test_criterion_8_lp_cross_validation():
    start = time.perf_counter()
    rng = random.Random(808)
    disagree = 0
    feasible_count = 0
    for _ in range(1000):
        system, bounds = rand_system(rng)
        verdict = bool(feasible(system, bounds))
        disagree += verdict != fm_feasible(system, bounds)
        feasible_count += verdict
    elapsed = time.perf_counter() - start
    ok = disagree == 0 and elapsed < 60
    record(8, "simplex against Fourier-Motzkin", ok,
           f"1000 systems, {feasible_count} feasible, {disagree} disagreements, {elapsed:.1f}s")
    assert ok


if __name__ == "__main__":
    failed = 0
    for name, fn in list(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
