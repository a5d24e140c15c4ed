"""Built-in vocabularies, sentences, problems and queries.

Threshold convention: the independent-set and clique sentences bound
positions by ``f(x) <= k`` (a set of ``k + 1`` vertices) while the
subgraph-isomorphism sentence uses ``f(x) < k``. Each oracle follows its own
sentence. Passing ``convention="strict"`` (or calling
:func:`set_convention`) rewrites the independent-set and clique sentences
and oracles to ``< k`` (a set of ``k`` vertices).

Graph oracles treat ``E`` as an arbitrary binary relation: loops are
ignored, both directions of a pair are checked separately.
"""

from __future__ import annotations

import itertools
from functools import lru_cache, partial

from .errors import UnknownNameError
from .parser import parse_formula, parse_sentence
from .problems import Problem
from .query import Query, identity_query, make_query
from .structures import GRAPH, STRING, Structure, Vocabulary

SGI = Vocabulary("sgi", (("F", 2), ("H", 2)), ("k",))
BITS_S = Vocabulary("bits_s", (("S", 1),))
BITS_T = Vocabulary("bits_t", (("T", 1),))

VOCABULARIES = {v.name: v for v in (GRAPH, SGI, STRING, BITS_S, BITS_T)}

CONVENTIONS = ("verbatim", "strict")
_convention = "verbatim"


def set_convention(convention: str) -> None:
    global _convention
    if convention not in CONVENTIONS:
        raise ValueError(f"convention must be one of {CONVENTIONS}")
    _convention = convention


def get_convention() -> str:
    return _convention


# -- sentence texts ---------------------------------------------------------

def psi_is_text(convention="verbatim") -> str:
    op = "<=" if convention == "verbatim" else "<"
    return f"EXINJ f. all x. all y. (x != y & f(x) {op} k & f(y) {op} k -> !E(x, y))"


def psi_cl_text(convention="verbatim") -> str:
    op = "<=" if convention == "verbatim" else "<"
    return f"EXINJ f. all x. all y. (x != y & f(x) {op} k & f(y) {op} k -> E(x, y))"


PSI_SG_TEXT = "EXINJ f. all x. all y. (x != y & f(x) < k & f(y) < k -> (H(f(x), f(y)) -> F(x, y)))"

# universal closure of the characteristic sentence given for the
# clique-to-subgraph-isomorphism projection
BETA_SGI_TEXT = "all x. all y. (x < k & y < k -> F(x, y))"

# exact image of that projection: H is the full square on {0..k-1}
BETA_SGI_IMAGE_TEXT = "all x. all y. (H(x, y) -> x < k & y < k) & (x < k & y < k -> H(x, y))"


def _parity_chain(rel: str) -> str:
    # P(x): the bits at positions 0..x hold an odd number of ones
    step = f"(P(x) & !{rel}(y) | !P(x) & {rel}(y))"
    return (
        f"(P(0) -> {rel}(0)) & ({rel}(0) -> P(0)) & "
        f"(all x. all y. (suc(x, y) -> (P(y) -> {step}) & ({step} -> P(y))))"
    )


PARITY_TEXT = f"EX2 P/1. {_parity_chain('S')} & P(max)"
PARITY_PADDED_TEXT = f"EX2 P/1. {_parity_chain('T')} & (ex x. suc(x, max) & P(x))"

ONE = "(ex z. suc(0, z) & x = z)"


# -- oracles ----------------------------------------------------------------

def _set_size(k: int, convention: str) -> int:
    return k + 1 if convention == "verbatim" else k


def independent_set_oracle(A: Structure, convention: str = "verbatim") -> bool:
    """Some vertex set of the threshold size has no E-pair between distinct members."""
    n, E = A.size, A.relation("E")
    size = _set_size(A.constant("k"), convention)
    if size > n:
        return False
    return any(
        all((u, v) not in E for u in S for v in S if u != v)
        for S in itertools.combinations(range(n), size)
    )


def clique_oracle(A: Structure, convention: str = "verbatim") -> bool:
    """Some vertex set of the threshold size has every E-pair between distinct members."""
    n, E = A.size, A.relation("E")
    size = _set_size(A.constant("k"), convention)
    if size > n:
        return False
    return any(
        all((u, v) in E for u in S for v in S if u != v)
        for S in itertools.combinations(range(n), size)
    )


def subgraph_iso_oracle(B: Structure) -> bool:
    """Some injective ``h: {0..k-1} -> universe`` maps every H-pair of
    distinct points onto an F-pair."""
    n, F, H, k = B.size, B.relation("F"), B.relation("H"), B.constant("k")
    pattern = [(a, b) for (a, b) in H if a != b and a < k and b < k]
    return any(
        all((h[a], h[b]) in F for a, b in pattern)
        for h in itertools.permutations(range(n), k)
    )


def parity_oracle(A: Structure) -> bool:
    return len(A.relations[0]) % 2 == 1


def parity_padded_oracle(B: Structure) -> bool:
    """``w0`` or ``w1`` for some odd-parity word ``w`` (of length >= 1)."""
    n = B.size
    return n >= 2 and sum(1 for (i,) in B.relations[0] if i < n - 1) % 2 == 1


# -- queries ----------------------------------------------------------------

def _q(source, target, arity, universe, rels, consts, name, universe_vars=None):
    parsed = {}
    for sym, (variables, text) in rels.items():
        parsed[sym] = (variables, parse_formula(text, source, free=variables))
    uvars = universe_vars or tuple(f"x{i}" for i in range(1, arity + 1))
    return make_query(
        name, source, target, arity,
        parse_formula(universe, source, free=uvars),
        parsed, consts, universe_vars=uvars,
    )


def fop_complement() -> Query:
    return _q(GRAPH, GRAPH, 1, "true",
              {"E": (("x1", "y1"), "!E(x1, y1)")}, {"k": ("k",)}, "fop_complement")


def fop_clique_to_sgi() -> Query:
    return _q(GRAPH, SGI, 1, "true",
              {"F": (("x1", "y1"), "E(x1, y1)"), "H": (("x1", "y1"), "x1 < k & y1 < k")},
              {"k": ("k",)}, "fop_clique_to_sgi")


def query_sgi_back() -> Query:
    return _q(SGI, GRAPH, 1, "true",
              {"E": (("x1", "y1"), "F(x1, y1)")}, {"k": ("k",)}, "query_sgi_back")


def fop_padding() -> Query:
    return _q(
        BITS_S, BITS_T, 2,
        f"x = 0 | {ONE} & y = 0",
        {"T": (("x", "y"), f"x = 0 & S(y) | {ONE} & y = 0")},
        {}, "fop_padding", universe_vars=("x", "y"),
    )


# -- registry ---------------------------------------------------------------

PROBLEM_NAMES = ("IS", "CLIQUE", "SUBGRAPHISO", "PARITY", "PARITY_PADDED")
QUERY_NAMES = ("fop_complement", "fop_clique_to_sgi", "fop_padding", "query_sgi_back", "id_query")
SENTENCE_NAMES = ("PSI_IS", "PSI_CL", "PSI_SG", "BETA_SGI", "BETA_SGI_IMAGE")
SENTENCE_VOCABS = {"PSI_IS": GRAPH, "PSI_CL": GRAPH, "PSI_SG": SGI, "BETA_SGI": SGI,
                   "BETA_SGI_IMAGE": SGI}
ALIASES = {"id": "id_query", "INDEPENDENTSET": "IS", "SGI": "SUBGRAPHISO"}


@lru_cache(maxsize=None)
def _build(name: str, convention: str):
    if name == "PSI_IS":
        return parse_sentence(psi_is_text(convention), GRAPH)
    if name == "PSI_CL":
        return parse_sentence(psi_cl_text(convention), GRAPH)
    if name == "PSI_SG":
        return parse_sentence(PSI_SG_TEXT, SGI)
    if name == "BETA_SGI":
        return parse_sentence(BETA_SGI_TEXT, SGI)
    if name == "BETA_SGI_IMAGE":
        return parse_sentence(BETA_SGI_IMAGE_TEXT, SGI)
    if name == "IS":
        return Problem("IS", GRAPH, _build("PSI_IS", convention),
                       partial(independent_set_oracle, convention=convention))
    if name == "CLIQUE":
        return Problem("CLIQUE", GRAPH, _build("PSI_CL", convention),
                       partial(clique_oracle, convention=convention))
    if name == "SUBGRAPHISO":
        return Problem("SUBGRAPHISO", SGI, _build("PSI_SG", convention), subgraph_iso_oracle)
    if name == "PARITY":
        return Problem("PARITY", BITS_S, parse_sentence(PARITY_TEXT, BITS_S), parity_oracle)
    if name == "PARITY_PADDED":
        return Problem("PARITY_PADDED", BITS_T, parse_sentence(PARITY_PADDED_TEXT, BITS_T),
                       parity_padded_oracle)
    if name == "fop_complement":
        return fop_complement()
    if name == "fop_clique_to_sgi":
        return fop_clique_to_sgi()
    if name == "fop_padding":
        return fop_padding()
    if name == "query_sgi_back":
        return query_sgi_back()
    if name == "id_query":
        return identity_query(GRAPH, "id_query")
    raise UnknownNameError(f"no built-in named {name!r}")


def builtin(name: str, convention: str | None = None):
    """Look up a built-in problem, query or sentence by name."""
    convention = convention or _convention
    if convention not in CONVENTIONS:
        raise ValueError(f"convention must be one of {CONVENTIONS}")
    return _build(ALIASES.get(name, name), convention)


def builtin_names() -> tuple[str, ...]:
    return PROBLEM_NAMES + QUERY_NAMES + SENTENCE_NAMES
