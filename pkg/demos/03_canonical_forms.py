"""Canonical decompositions checked exhaustively.

For a projection ``p`` from a problem into a target, a back-query ``I``
and a candidate characteristic sentence ``beta``, the sentence

    (beta & dual(I, psi)) | (!beta & lam)

should define the target. Both worked cases are checked on every small
structure, together with the ingredients they rely on.
"""

from fopkit import builtin, verify_characteristic, verify_condition_c, verify_reduction
from fopkit.canonical import decomposition_case, verify_decomposition
from fopkit.printer import print_formula
from fopkit.syntax import FALSE
from fopkit.structures import format_structure

d, target = decomposition_case("clique")
print("clique case, size <= 3:", verify_decomposition(d, target, 3).verdict)

p = builtin("fop_clique_to_sgi", "strict")
clique = builtin("CLIQUE", "strict")
print("clique -> subgraph iso reduction:",
      verify_reduction(p, clique, builtin("SUBGRAPHISO"), 2).verdict)
print("back-query round trip:",
      verify_condition_c(builtin("query_sgi_back"), p, clique, 2).verdict)

d, target = decomposition_case("subgraphiso")
print("subgraph iso case, size <= 2:", verify_decomposition(d, target, 2).verdict)

# the proposed beta is not an exact description of the projection's image
report = verify_characteristic(builtin("BETA_SGI"), p, 2)
print()
print("beta:", print_formula(builtin("BETA_SGI")), "->", report.verdict)
print("disagreement at", format_structure(report.counterexample, "B"))
print("beta holds there:", report.beta_value)

# without the residue the decomposition misses instances outside the image
d, target = decomposition_case("subgraphiso", lam=FALSE)
report = verify_decomposition(d, target, 2)
print()
print("residue false:", report.verdict, "at", format_structure(report.counterexample, "B"))
