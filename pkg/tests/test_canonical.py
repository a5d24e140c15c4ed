
import pytest
from hypothesis import given, strategies as st

from fopkit import syntax as s
from fopkit.canonical import (
    build_decomposition,
    cong,
    decomposition_case,
    verify_condition_c,
    verify_decomposition,
    verify_reduction,
)
from fopkit.errors import BudgetExceededError, UnsupportedNumericAtomError
from fopkit.evaluate import eval_so
from fopkit.library import builtin
from fopkit.parser import parse_formula, parse_sentence
from fopkit.query import apply_query, make_query
from fopkit.structures import GRAPH, STRING, enumerate_structures, make_structure
from fopkit.transform import simplify

IS = builtin("IS")
EMPTY = make_structure(GRAPH, 3, {"E": []}, {"k": 1})
FULL = make_structure(GRAPH, 3, {"E": [(a, b) for a in range(3) for b in range(3)]}, {"k": 1})
GRAPHS = list(enumerate_structures(GRAPH, 2)) + list(enumerate_structures(GRAPH, 3))


def test_cong_examples():
    other = make_structure(GRAPH, 2, {"E": []}, {"k": 0})
    assert cong(IS, EMPTY, other)
    assert not cong(IS, EMPTY, FULL)
    assert cong(IS, FULL, FULL)


@given(st.sampled_from(GRAPHS), st.sampled_from(GRAPHS), st.sampled_from(GRAPHS))
def test_cong_equivalence(a, b, c):
    assert cong(IS, a, a)
    assert cong(IS, a, b) == cong(IS, b, a)
    if cong(IS, a, b) and cong(IS, b, c):
        assert cong(IS, a, c)


def test_reduction_is_to_clique():
    report = verify_reduction(builtin("fop_complement"), IS, builtin("CLIQUE"), 3)
    assert report.verified and report.checked == 2 + 32 + 1536


def test_reduction_is_to_is_fails():
    report = verify_reduction(builtin("fop_complement"), IS, IS, 3)
    assert not report.verified
    A = report.counterexample
    B = apply_query(builtin("fop_complement"), A)
    assert IS.contains(A) != IS.contains(B)
    assert report.details["image"] == B


def test_reduction_parity_padding():
    report = verify_reduction(builtin("fop_padding"), builtin("PARITY"),
                              builtin("PARITY_PADDED"), 6, min_size=2)
    assert report.verified and report.checked == sum(2 ** n for n in range(2, 7))


def test_reduction_parallel_same_answer():
    args = (builtin("fop_complement"), IS, IS, 3)
    assert verify_reduction(*args, jobs=2).counterexample == \
        verify_reduction(*args).counterexample


def test_reduction_budget():
    with pytest.raises(BudgetExceededError):
        verify_reduction(builtin("fop_complement"), IS, builtin("CLIQUE"), 5)


def test_condition_c_complement():
    p = builtin("fop_complement")
    assert verify_condition_c(p, p, IS, 3).verified


def test_condition_c_sgi():
    report = verify_condition_c(builtin("query_sgi_back"), builtin("fop_clique_to_sgi"),
                                builtin("CLIQUE"), 3)
    assert report.verified


def test_condition_c_broken_back_query():
    broken = make_query("broken", builtin("fop_clique_to_sgi").target, GRAPH, 1, s.TRUE,
                        {"E": (("x1", "y1"), parse_formula("!F(x1, y1)", builtin("SGI").vocab,
                                                         free=("x1", "y1")))},
                        {"k": ("k",)})
    report = verify_condition_c(broken, builtin("fop_clique_to_sgi"), builtin("CLIQUE"), 3)
    assert not report.verified
    assert report.details["source_member"] != report.details["round_trip_member"]


def test_clique_decomposition_shape():
    d, target = decomposition_case("clique", simplify_dual=True)
    assert d.dual == builtin("PSI_CL")
    assert d.sentence == s.Or(s.And(s.TRUE, builtin("PSI_CL")), s.And(s.Not(s.TRUE), s.FALSE))
    assert simplify(d.sentence) == builtin("PSI_CL")
    assert verify_decomposition(d, target, 3).verified


def test_identity_decomposition():
    d, target = decomposition_case("identity")
    assert simplify(d.sentence) == simplify(builtin("PSI_CL"))
    assert verify_decomposition(d, target, 3).verified


def test_sgi_decomposition_small():
    d, target = decomposition_case("subgraphiso")
    assert verify_decomposition(d, target, 2).verified


def test_sgi_decomposition_needs_residue():
    d, target = decomposition_case("subgraphiso", lam=s.FALSE)
    report = verify_decomposition(d, target, 2)
    assert not report.verified
    B = report.counterexample
    assert target.contains(B) and not eval_so(B, d.sentence)
    assert not eval_so(B, d.beta)


def test_build_decomposition_propagates_bit():
    q = make_query("pairs", STRING, STRING, 2, s.TRUE,
                   {"Q": (("y1", "y2"), parse_formula("Q(y1)", STRING, free=("y1", "y2")))}, {})
    with pytest.raises(UnsupportedNumericAtomError):
        build_decomposition(q, q, parse_sentence("ex x. BIT(x, x)", STRING), s.FALSE, s.TRUE)
