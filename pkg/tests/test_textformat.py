import pytest
from hypothesis import given, strategies as st

from fopkit.errors import FopkitError
from fopkit.library import SGI, builtin
from fopkit.structures import GRAPH, count_structures, enumerate_structures, format_structure
from fopkit.textformat import (
    format_document,
    format_query,
    format_vocabulary,
    parse_document,
    parse_formula_text,
    parse_query,
    parse_structure,
)


def test_structure_example():
    A = parse_structure("struct A : graph { size = 3; E = {(0,1),(1,0)}; k = 2; }")
    assert A.size == 3 and A.relation("E") == {(0, 1), (1, 0)} and A.constant("k") == 2


def test_vocab_and_struct_document():
    doc = parse_document("""
        vocab colored { rel E/2, C/1; const s; }   # a declared vocabulary
        struct G : colored { size = 2; E = {}; C = {1}; s = 0; }
    """)
    v = doc.vocabs["colored"]
    assert v.relations == (("E", 2), ("C", 1)) and v.constants == ("s",)
    assert doc.structures["G"].relation("C") == {(1,)}
    assert parse_document(format_vocabulary(v)).vocabs["colored"] == v


def test_query_example():
    q = parse_query("query comp : graph -> graph arity 1 "
                    "{ universe: true; E(x1,y1): !E(x1,y1); k: x1 = k; }")
    assert q.relations == builtin("fop_complement").relations
    assert q.constant_tuple("k") == ("k",)


@pytest.mark.parametrize("name", ["fop_complement", "fop_clique_to_sgi", "fop_padding",
                                  "query_sgi_back", "id_query"])
def test_query_round_trip(name):
    q = builtin(name)
    assert parse_query(format_query(q)) == q


@given(st.integers(1, 3), st.data())
def test_structure_round_trip(n, data):
    index = data.draw(st.integers(0, count_structures(SGI, n) - 1))
    A = next(enumerate_structures(SGI, n, index))
    assert parse_structure(format_structure(A)) == A


def test_document_round_trip():
    As = list(enumerate_structures(GRAPH, 2))[:3]
    doc = parse_document(format_document(As, [builtin("fop_padding")]))
    assert list(doc.structures.values()) == As
    assert list(doc.queries.values()) == [builtin("fop_padding")]


@pytest.mark.parametrize("text", [
    "struct A : nowhere { size = 1; }",
    "struct A : graph { size = 2; E = {(0,2)}; k = 0; }",
    "struct A : graph { size = 2; E = {}; }",
    "query q : graph -> graph arity 1 { E(x1, y1): E(x1, y1); k: x1 = k; }",
    "query q : graph -> graph arity 1 { universe: true; E(x1, y1): E(x1, z); k: x1 = k; }",
    "vocab v { rel E/2; rel E/1; }",
    "struct A : graph { size = 2 E = {}; k = 0; }",
])
def test_bad_documents(text):
    with pytest.raises(FopkitError):
        parse_document(text)


def test_formula_files_accept_generated_names():
    f = parse_formula_text("ex _v0. E(_v0, k)", GRAPH)
    assert f.var == "_v0"
