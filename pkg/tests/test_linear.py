import random
from fractions import Fraction as F

import pytest

from fourier_motzkin import fm_feasible
from helpers import rand_system
from paraprob.linear import (AffineTerm, Feasible, Infeasible, LinConstraint, dump_constraints, eq, feasible, ge,
                             gt, le, lt, vertex_solution)

x, y = AffineTerm.var("x"), AffineTerm.var("y")
u1, u2, u3 = (AffineTerm.var(f"u{i}") for i in (1, 2, 3))


def test_feasible_examples():
    r = feasible([le(x, F(1, 2)), ge(x, F(1, 2))])
    assert isinstance(r, Feasible) and r.assignment["x"] == F(1, 2)
    assert isinstance(feasible([lt(x, F(1, 2)), ge(x, F(1, 2))]), Infeasible)
    system = [eq(u1 + u2, 1), ge(u1, F(2, 3)), ge(u2, F(2, 3))]
    assert not feasible(system, {"u1": (0, None), "u2": (0, None)})


def test_empty_and_constant_systems():
    r = feasible([])
    assert r and r.assignment == {}
    assert feasible([le(AffineTerm(0), 1)])
    assert not feasible([lt(AffineTerm(1), 1)])
    assert not feasible([eq(AffineTerm(0), 1)])


def test_strict_witness_is_interior():
    system = [gt(x, 0), lt(x, F(1, 1000)), lt(y, x), gt(y, 0)]
    r = feasible(system)
    assert r and all(c.holds(r.assignment) for c in system)


def test_free_variables_may_go_negative():
    r = feasible([le(x + y, -3), ge(x, -1)])
    assert r and r.assignment["x"] + r.assignment["y"] <= -3
    assert not feasible([le(x, -1)], {"x": (0, 1)})


def test_vertex_examples():
    r = vertex_solution([eq(u1 + u2 + u3, 1)])
    assert r and sorted(r.assignment.values()) == [0, 0, 1]
    r = vertex_solution([eq(u1 + u2, 1), ge(u1, F(1, 4))])
    assert r and sum(1 for v in r.assignment.values() if v) <= 2
    assert r.assignment["u1"] + r.assignment["u2"] == 1
    assert isinstance(vertex_solution([eq(u1 + u2, 1), ge(u1, 2)]), Infeasible)
    with pytest.raises(ValueError):
        vertex_solution([eq(u1, 1)], {"u1": (None, None)})


def test_vertex_sparsity_random():
    rng = random.Random(4)
    for _ in range(200):
        k = rng.randint(1, 4)
        n = rng.randint(k, 10)
        us = [AffineTerm.var(f"u{i}") for i in range(n)]
        rows = [eq(sum(us[1:], us[0]), 1)]
        target = [F(rng.randint(0, 6), 6) for _ in range(n)]
        s = sum(target)
        target = [t / s for t in target] if s else [F(1)] + [F(0)] * (n - 1)
        for _ in range(k - 1):
            picks = [i for i in range(n) if rng.random() < 0.5]
            lhs = AffineTerm(0, {f"u{i}": 1 for i in picks})
            rows.append(eq(lhs, sum((target[i] for i in picks), F(0))))
        r = vertex_solution(rows)
        assert r, "system built from a feasible point"
        assert all(c.holds(r.assignment) for c in rows)
        assert sum(1 for v in r.assignment.values() if v) <= len(rows)


def test_matches_fourier_motzkin():
    rng = random.Random(17)
    seen = {True: 0, False: 0}
    for _ in range(400):
        system, bounds = rand_system(rng)
        verdict = feasible(system, bounds)
        assert bool(verdict) == fm_feasible(system, bounds)
        seen[bool(verdict)] += 1
        if verdict:
            assert all(c.holds(verdict.assignment) for c in system)
            for name, (lo, hi) in bounds.items():
                v = verdict.assignment[name]
                assert (lo is None or v >= lo) and (hi is None or v <= hi)
    assert seen[True] > 40 and seen[False] > 40


def test_adding_constraints_is_monotone():
    rng = random.Random(8)
    for _ in range(200):
        system, bounds = rand_system(rng)
        verdicts = [bool(feasible(system[:k], bounds)) for k in range(len(system) + 1)]
        for a, b in zip(verdicts, verdicts[1:]):
            assert a or not b


def test_affine_term_arithmetic_and_printing():
    c, j = AffineTerm.var("c"), AffineTerm.var("j1")
    t = 1 - c + j
    assert str(t) == "1 - c + j1"
    assert (t - j + c) == AffineTerm(1)
    assert (t * 0).is_constant()
    assert str(AffineTerm(0, {"x": F(2, 3)})) == "2/3*x"
    assert str(AffineTerm(0)) == "0"
    assert AffineTerm(0, {"x": 0}).coeffs == {}
    assert t.evaluate({"c": F(1, 2), "j1": F(1, 4)}) == F(3, 4)


def test_dump_format():
    text = dump_constraints([le(x, F(2, 3)), lt(AffineTerm.var("c"), 1), eq(u1 + u2, 1)])
    assert text.splitlines() == ["x <= 2/3", "c < 1", "u1 + u2 = 1"]
    with pytest.raises(ValueError):
        LinConstraint(x, ">", y)
