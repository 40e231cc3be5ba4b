import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given

from helpers import all_small_models, golden, models, rand_bd, small_bd
from paraprob.bd import (BDModel, ExtensionKind, bd_entails, bd_equiv, dual_model, extension, extensions, supports,
                         truth_table, valuations4, value4)
from paraprob.errors import ModelError, ResourceLimit
from paraprob.modelfile import dump_model, parse_model
from paraprob.syntax import And, Neg, Or, Var, parse_bd

K = ExtensionKind


def test_supports_examples():
    model, _ = golden()
    assert supports(model, "w0", parse_bd("p")) == (True, True)
    assert supports(model, "w0", parse_bd("q")) == (False, False)
    assert supports(model, "w1", parse_bd("p | q")) == (False, True)
    with pytest.raises(ModelError):
        supports(model, "w9", parse_bd("p"))


def test_extension_examples():
    model, _ = golden()
    assert extension(model, parse_bd("p"), K.C) == {"w0"}
    assert extension(model, parse_bd("p|q"), K.PLUS) == {"w0"}
    assert extension(model, parse_bd("p"), K.D) == {"w1"}
    assert extension(model, parse_bd("q"), K.U) == {"w0"}


def test_entailment_examples():
    e = lambda a, b: bd_entails(parse_bd(a), parse_bd(b))  # noqa: E731
    assert e("p", "p | q")
    assert not e("p & -p", "q")
    assert e("p & q", "q & p")
    assert not e("p", "q | -q")
    eq = lambda a, b: bd_equiv(parse_bd(a), parse_bd(b))  # noqa: E731
    assert eq("p", "p & (p | q)")
    assert eq("p", "--p")
    assert not eq("p | -p", "q | -q")
    assert eq("-(p & q)", "-p | -q")


def test_entailment_counterexample_for_explosion():
    # the witness found by enumeration: p both, q neither
    v = {"p": (True, True), "q": (False, False)}
    assert value4(parse_bd("p & -p"), v) == (True, True)
    assert value4(parse_bd("q"), v) == (False, False)


def _valid_on(model, f, g):
    fp, fm = extensions(model, f)
    gp, gm = extensions(model, g)
    return fp <= gp and gm <= fm


def test_one_world_reduction():
    rng = random.Random(3)
    small = list(all_small_models(("p", "q"), max_worlds=2))
    assert len(small) == 16 + 256
    for _ in range(150):
        f, g = rand_bd(rng, depth=2), rand_bd(rng, depth=2)
        by_models = all(_valid_on(m, f, g) for m in small)
        assert by_models == bd_entails(f, g), (f, g)


@given(models(), small_bd, small_bd)
def test_de_morgan_extensions(mw, f, g):
    model, _ = mw
    assert extension(model, Neg(And(f, g)), K.PLUS) == extension(model, Or(Neg(f), Neg(g)), K.PLUS)
    assert extension(model, Neg(Or(f, g)), K.MINUS) == extension(model, And(Neg(f), Neg(g)), K.MINUS)


@given(models(), small_bd)
def test_four_parts_partition_worlds(mw, f):
    model, _ = mw
    parts = [extension(model, f, k) for k in (K.B, K.D, K.C, K.U)]
    assert sum(len(s) for s in parts) == len(model.worlds)
    assert frozenset().union(*parts) == model.all_worlds()
    plus, minus = extensions(model, f)
    assert parts[0] == plus - minus and parts[2] == plus & minus


def _formulas_over_p(depth):
    level = [Var("p")]
    out = set(level)
    for _ in range(depth):
        new = {Neg(f) for f in out}
        new |= {c(a, b) for a, b in product(out, repeat=2) for c in (And, Or)}
        out |= new
    return out


def test_no_tautologies_at_small_depth():
    formulas = _formulas_over_p(3)
    assert len(formulas) > 2000
    for f in formulas:
        assert any(not value4(f, v)[0] for v in valuations4(["p"])), f
        assert any(not value4(f, v)[1] for v in valuations4(["p"])), f


def test_valuations_enumerate_four_values():
    assert len(list(valuations4(["p", "q"]))) == 16


def test_truth_table_cap():
    with pytest.raises(ResourceLimit):
        truth_table(Var("p"), [f"x{i}" for i in range(13)])


def test_model_file_round_trip():
    model, weights = golden()
    assert weights == {"w0": Fraction(2, 3), "w1": Fraction(1, 3)}
    text = dump_model(model, weights)
    again = parse_model(text)
    assert again == (model, weights)
    assert parse_model("world a { }\n")[1] is None


@pytest.mark.parametrize("text", [
    "world w0 { +p }\nweight w0 1/2\n",
    "world w0 { +p }\nworld w0 { -p }\n",
    "world w0 { *p }\n",
    "world w0 { +p }\nweight w1 1\n",
    "world w0 { +p }\nweight w0 1/0\n",
    "",
])
def test_bad_model_files(text):
    with pytest.raises(ModelError):
        parse_model(text)


def test_dual_model_example():
    model, weights = golden()
    dual, w2 = dual_model(model, weights)
    assert w2 == weights
    assert dual.vplus["w0"] == {"q"} and dual.vminus["w0"] == {"q"}
    assert dual.vplus["w1"] == set() and dual.vminus["w1"] == {"p", "q"}


@given(models(), small_bd)
def test_dual_model_is_involution_and_complements(mw, f):
    model, weights = mw
    dual, _ = dual_model(model, weights, ["p", "q"])
    assert dual_model(dual)[0] == BDModel(model.worlds, model.vplus, model.vminus, ["p", "q"])
    plus, minus = extensions(model, f)
    dplus, dminus = extensions(dual, f)
    assert plus == model.all_worlds() - dminus
    assert minus == model.all_worlds() - dplus


def test_model_validation():
    with pytest.raises(ModelError):
        BDModel([])
    with pytest.raises(ModelError):
        BDModel(["a", "a"])
    with pytest.raises(ModelError):
        BDModel(["a"], {"b": {"p"}})
