import itertools

import pytest

from fopkit.errors import UnknownNameError
from fopkit.library import (
    BITS_S,
    BITS_T,
    SGI,
    builtin,
    builtin_names,
    clique_oracle,
    get_convention,
    independent_set_oracle,
    set_convention,
    subgraph_iso_oracle,
)
from fopkit.problems import Problem
from fopkit.query import Query, apply_query
from fopkit.structures import (
    GRAPH,
    enumerate_structures,
    make_structure,
    string_to_structure,
)
from fopkit.transform import elaborate


def test_every_name_resolves():
    for name in builtin_names():
        assert builtin(name) is not None
    with pytest.raises(UnknownNameError):
        builtin("NOPE")


def test_problem_types():
    for name in ("IS", "CLIQUE", "SUBGRAPHISO", "PARITY", "PARITY_PADDED"):
        p = builtin(name)
        assert isinstance(p, Problem) and p.sentence is not None and p.oracle is not None
    assert isinstance(builtin("fop_padding"), Query)


def test_is_sentence_elaborates():
    assert elaborate(builtin("IS").sentence) is not None


def test_oracle_thresholds():
    empty = make_structure(GRAPH, 3, {"E": []}, {"k": 2})
    assert independent_set_oracle(empty)  # 3 vertices
    assert independent_set_oracle(empty, "strict")
    one_edge = make_structure(GRAPH, 3, {"E": [(0, 1)]}, {"k": 2})
    assert not independent_set_oracle(one_edge)
    assert independent_set_oracle(one_edge, "strict")
    loops = make_structure(GRAPH, 2, {"E": [(0, 0), (1, 1)]}, {"k": 1})
    assert independent_set_oracle(loops) and not clique_oracle(loops)


def test_subgraph_iso_oracle():
    B = make_structure(SGI, 3, {"F": [(0, 1), (1, 0)], "H": [(0, 1), (1, 0)]}, {"k": 2})
    assert subgraph_iso_oracle(B)
    B = make_structure(SGI, 3, {"F": [(0, 1)], "H": [(0, 1), (1, 0)]}, {"k": 2})
    assert not subgraph_iso_oracle(B)
    # H pairs outside {0..k-1} are ignored
    B = make_structure(SGI, 3, {"F": [], "H": [(1, 2)]}, {"k": 1})
    assert subgraph_iso_oracle(B)


@pytest.mark.parametrize("convention", ["verbatim", "strict"])
@pytest.mark.parametrize("name", ["IS", "CLIQUE"])
def test_graph_sentence_matches_oracle(name, convention):
    p = builtin(name, convention)
    for n in (1, 2, 3):
        for A in enumerate_structures(GRAPH, n):
            assert p.contains(A, "sentence") == p.contains(A, "oracle"), A


def test_sgi_sentence_matches_oracle():
    p = builtin("SUBGRAPHISO")
    for n in (1, 2):
        for A in enumerate_structures(SGI, n):
            assert p.contains(A, "sentence") == p.contains(A, "oracle"), A


@pytest.mark.parametrize("name,vocab", [("PARITY", BITS_S), ("PARITY_PADDED", BITS_T)])
def test_string_sentence_matches_oracle(name, vocab):
    p = builtin(name)
    for n in range(1, 9):
        for A in enumerate_structures(vocab, n):
            assert p.contains(A, "sentence") == p.contains(A, "oracle"), A


def test_parity_padded_membership_example():
    assert string_to_structure("101", BITS_T) in builtin("PARITY_PADDED")
    assert string_to_structure("100", BITS_T) in builtin("PARITY_PADDED")
    assert string_to_structure("001", BITS_T) not in builtin("PARITY_PADDED")


def test_clique_to_sgi_outputs_complete_pattern():
    G = make_structure(GRAPH, 3, {"E": [(0, 2)]}, {"k": 2})
    B = apply_query(builtin("fop_clique_to_sgi"), G)
    assert B.relation("F") == G.relation("E")
    assert B.relation("H") == set(itertools.product(range(2), repeat=2))
    assert B.constant("k") == 2


def test_convention_switch():
    assert get_convention() == "verbatim"
    try:
        set_convention("strict")
        assert builtin("PSI_IS") == builtin("PSI_IS", "strict")
    finally:
        set_convention("verbatim")
    assert builtin("PSI_IS") != builtin("PSI_IS", "strict")
    with pytest.raises(ValueError):
        set_convention("loose")
