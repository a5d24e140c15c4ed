import itertools

import pytest
from hypothesis import given, strategies as st

from fopkit.errors import (
    ArityMismatchError,
    ConstantOutOfRangeError,
    EmptyUniverseError,
    EmptyWordError,
    LengthMismatchError,
    MissingInterpretationError,
    OutOfRangeError,
    VocabularyError,
)
from fopkit.library import SGI
from fopkit.structures import (
    GRAPH,
    STRING,
    Vocabulary,
    count_structures,
    decode,
    encode,
    encoding_length,
    enumerate_structures,
    format_structure,
    make_structure,
    string_to_structure,
    structure_index,
    structure_to_string,
)


def test_graph_structure_valid():
    A = make_structure(GRAPH, 3, {"E": [(0, 1), (1, 0)]}, {"k": 2})
    assert A.size == 3
    assert A.relation("E") == {(0, 1), (1, 0)}
    assert A.constant("k") == 2


def test_out_of_range_tuple():
    with pytest.raises(OutOfRangeError):
        make_structure(GRAPH, 3, {"E": [(0, 3)]}, {"k": 0})


def test_out_of_range_constant():
    with pytest.raises(OutOfRangeError):
        make_structure(GRAPH, 3, {"E": []}, {"k": 3})


def test_empty_universe():
    with pytest.raises(EmptyUniverseError):
        make_structure(GRAPH, 0, {"E": []}, {"k": 0})


def test_missing_interpretation():
    with pytest.raises(MissingInterpretationError):
        make_structure(GRAPH, 2, {}, {"k": 0})
    with pytest.raises(MissingInterpretationError):
        make_structure(GRAPH, 2, {"E": []}, {})


def test_arity_mismatch():
    with pytest.raises(ArityMismatchError):
        make_structure(GRAPH, 2, {"E": [(0,)]}, {"k": 0})


@pytest.mark.parametrize("rels,consts", [
    ((("E", 2), ("E", 1)), ()),
    ((("E", 0),), ()),
    ((("suc", 2),), ()),
    ((), ("max",)),
    ((("E", 2),), ("E",)),
])
def test_vocabulary_invariants(rels, consts):
    with pytest.raises(VocabularyError):
        Vocabulary("bad", rels, consts)


@pytest.mark.parametrize("vocab,size,count", [
    (GRAPH, 1, 2), (GRAPH, 2, 32), (STRING, 3, 8), (GRAPH, 3, 512 * 3), (SGI, 2, 2 ** 8 * 2),
])
def test_enumeration_counts(vocab, size, count):
    assert count_structures(vocab, size) == count
    items = list(enumerate_structures(vocab, size))
    assert len(items) == count
    assert len(set(items)) == count


def test_enumeration_order_first_items():
    first = list(enumerate_structures(GRAPH, 2))[:4]
    # constants vary fastest, then the relation bit counter
    assert [A.constant("k") for A in first] == [0, 1, 0, 1]
    assert first[0].relation("E") == frozenset()
    assert first[2].relation("E") == {(0, 0)}


def test_enumeration_slices_and_index():
    full = list(enumerate_structures(GRAPH, 2))
    assert list(enumerate_structures(GRAPH, 2, 5, 11)) == full[5:11]
    assert [structure_index(A) for A in full] == list(range(len(full)))


def test_encode_string_example():
    A = make_structure(STRING, 2, {"Q": [(1,)]})
    assert encode(A) == "01"


def test_encode_graph_example_round_trip():
    A = make_structure(GRAPH, 3, {"E": [(0, 1), (1, 0)]}, {"k": 2})
    bits = encode(A)
    assert bits == "010100000" + "10"
    assert len(bits) == encoding_length(GRAPH, 3)
    assert decode(GRAPH, 3, bits) == A


def test_encode_round_trip_exhaustive():
    for n in (1, 2, 3):
        for A in enumerate_structures(GRAPH, n):
            assert decode(GRAPH, n, encode(A)) == A


def test_decode_errors():
    with pytest.raises(LengthMismatchError):
        decode(GRAPH, 2, "101")
    with pytest.raises(ConstantOutOfRangeError):
        decode(GRAPH, 3, "0" * 9 + "11")


def test_strings():
    A = string_to_structure("10")
    assert A.size == 2 and A.relation("Q") == {(0,)}
    B = string_to_structure("101")
    assert B.size == 3 and B.relation("Q") == {(0,), (2,)}
    with pytest.raises(EmptyWordError):
        string_to_structure("")


def test_string_inverse_exhaustive():
    for length in range(1, 9):
        for bits in itertools.product("01", repeat=length):
            word = "".join(bits)
            assert structure_to_string(string_to_structure(word)) == word


@given(st.integers(1, 4), st.data())
def test_encode_round_trip_random(n, data):
    index = data.draw(st.integers(0, count_structures(SGI, n) - 1))
    A = next(enumerate_structures(SGI, n, index))
    assert decode(SGI, n, encode(A)) == A
    assert structure_index(A) == index


def test_format_structure():
    A = make_structure(GRAPH, 3, {"E": [(1, 0), (0, 1)]}, {"k": 2})
    assert format_structure(A) == "struct A : graph { size = 3; E = {(0,1), (1,0)}; k = 2; }"
