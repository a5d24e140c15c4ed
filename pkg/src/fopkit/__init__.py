"""Finite structures, first-order queries and projections, dual formulas,
and exhaustive verification of reductions and canonical decompositions."""

from .canonical import (
    Decomposition,
    ReductionReport,
    build_decomposition,
    cong,
    decomposition_case,
    verify_condition_c,
    verify_decomposition,
    verify_reduction,
)
from .dual import (
    CharacteristicReport,
    DualResult,
    image_membership,
    semantic_dual_eval,
    syntactic_dual,
    verify_characteristic,
)
from .errors import FopkitError
from .evaluate import eval_fo, eval_so, find_witness, models
from .library import builtin, builtin_names, get_convention, set_convention
from .parser import parse_formula, parse_sentence
from .printer import print_formula
from .problems import Problem
from .query import Query, apply_query, check_injective, is_fop, make_query
from .structures import (
    GRAPH,
    STRING,
    Structure,
    Vocabulary,
    decode,
    encode,
    enumerate_structures,
    make_structure,
    string_to_structure,
    structure_to_string,
)
from .transform import elaborate, is_numerical, simplify

__all__ = [
    "CharacteristicReport", "Decomposition", "DualResult", "FopkitError", "GRAPH",
    "Problem", "Query", "ReductionReport", "STRING", "Structure", "Vocabulary",
    "apply_query", "build_decomposition", "builtin", "builtin_names", "check_injective",
    "cong", "decode", "decomposition_case", "elaborate", "encode", "enumerate_structures",
    "eval_fo", "eval_so", "find_witness", "get_convention", "image_membership", "is_fop",
    "is_numerical", "make_query", "make_structure", "models", "parse_formula",
    "parse_sentence", "print_formula", "semantic_dual_eval", "set_convention", "simplify",
    "string_to_structure", "structure_to_string", "syntactic_dual", "verify_characteristic",
    "verify_condition_c", "verify_decomposition", "verify_reduction",
]
