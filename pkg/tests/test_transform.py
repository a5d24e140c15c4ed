import pytest
from hypothesis import given, settings

from fopkit import syntax as s
from fopkit.errors import FunctionTermOutsideBinderError
from fopkit.evaluate import eval_so, sentence_checker
from fopkit.library import builtin
from fopkit.parser import parse_formula, parse_sentence
from fopkit.structures import GRAPH, STRING, enumerate_structures
from fopkit.transform import (
    FreshNames,
    classify,
    elaborate,
    free_variables,
    has_sugar,
    injectivity_axiom,
    is_guard,
    is_numerical,
    match_function_binder,
    simplify,
    substitute,
    totality_axiom,
)

from formulas import formulas

X, Y = s.Var("x"), s.Var("y")


def test_elaborate_example():
    f = parse_sentence("EXINJ f. f(0) = max", STRING)
    g = elaborate(f)
    assert isinstance(g, s.SOExists) and g.name == "f" and g.arity == 2
    parts = s.flatten(g.body, s.And)
    assert len(parts) == 4  # two totality conjuncts, injectivity, body
    body = parts[-1]
    assert isinstance(body, s.Exists)
    y = s.Var(body.var)
    assert body.body == s.And(s.Atom("f", (s.Zero(), y)), s.Eq(y, s.Max()))
    assert not has_sugar(g)
    assert match_function_binder(g)[:2] == ("f", True)


def test_elaborate_idempotent():
    for name in ("PSI_IS", "PSI_CL", "PSI_SG"):
        once = elaborate(builtin(name))
        assert elaborate(once) == once


def test_function_term_outside_binder():
    with pytest.raises(FunctionTermOutsideBinderError):
        elaborate(s.Eq(s.FunApp("f", s.Zero()), s.Zero()))


def test_elaborate_preserves_models():
    for name in ("PSI_IS", "PSI_CL"):
        f = builtin(name)
        a = sentence_checker(f, GRAPH)
        b = sentence_checker(elaborate(f), GRAPH, recognize=False)
        for n in (1, 2, 3):
            for A in enumerate_structures(GRAPH, n):
                assert a(A) == b(A)


def test_axioms_shape():
    tot = totality_axiom("f", "a", "b", "c")
    inj = injectivity_axiom("f", "a", "b", "c")
    assert free_variables(tot) == free_variables(inj) == set()


@pytest.mark.parametrize("text,expected", [
    ("x <= y & BIT(x, y)", True),
    ("E(x, y)", False),
    ("x = k", False),
    ("all x. ex y. suc(x, y) | x = max", True),
])
def test_is_numerical(text, expected):
    assert is_numerical(parse_formula(text, GRAPH)) is expected


def test_is_guard_allows_constants():
    assert is_guard(parse_formula("x < k", GRAPH))
    assert not is_guard(parse_formula("E(x, k)", GRAPH))


@pytest.mark.parametrize("text,expected", [
    ("!!E(x, y)", "E(x, y)"),
    ("E(x, y) & true", "E(x, y)"),
    ("!(E(x, y) & x = y)", "!E(x, y) | x != y"),
    ("!(E(x, y) -> x = y)", "E(x, y) & x != y"),
    ("true -> E(x, y)", "E(x, y)"),
    ("all x. true", "true"),
])
def test_simplify_examples(text, expected):
    assert simplify(parse_formula(text, GRAPH)) == parse_formula(expected, GRAPH)


def test_simplify_leaves_quantifiers():
    f = parse_formula("!(all x. E(x, x))", GRAPH)
    assert simplify(f) == f


@settings(max_examples=60, deadline=None)
@given(formulas(GRAPH, depth=4, closed=True, so_arity_max=1))
def test_simplify_preserves_truth(f):
    g = simplify(f)
    for n in (1, 2):
        for A in list(enumerate_structures(GRAPH, n))[::3]:
            assert eval_so(A, f) == eval_so(A, g)


def test_substitute_avoids_capture():
    f = parse_formula("ex y. E(x, y)", GRAPH)
    g = substitute(f, {"x": Y})
    assert isinstance(g, s.Exists) and g.var != "y"
    assert free_variables(g) == {"y"}


def test_fresh_names_skip_existing():
    fresh = FreshNames({"_v0", "_v4", "x"})
    assert fresh() == "_v5"
    assert fresh() == "_v6"


def test_classify():
    assert str(classify(parse_sentence("all x. E(x, x)", GRAPH))) == "FO"
    assert str(classify(builtin("PSI_IS"))) == "SOE"
    f = parse_sentence("EX2 P/1. ALL2 R/1. all x. P(x) | R(x)", STRING)
    assert str(classify(f)) == "SOEA"
    g = parse_sentence("all x. EX2 P/1. P(x)", STRING)
    assert classify(g).kind == "SO"
