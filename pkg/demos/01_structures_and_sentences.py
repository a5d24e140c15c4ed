"""Structures, sentences and witnesses.

A graph with a distinguished vertex count ``k`` is a structure over the
vocabulary ``<E/2; k>``. The independent-set sentence quantifies over an
injective function ``f`` and asks that the vertices placed at positions
``<= k`` are pairwise non-adjacent.
"""

from fopkit import builtin, eval_so, find_witness, make_structure, print_formula
from fopkit.structures import GRAPH, encode, format_structure

psi = builtin("PSI_IS")
print("independent-set sentence:")
print("  ", print_formula(psi))

path = make_structure(GRAPH, 4, {"E": [(0, 1), (1, 0), (1, 2), (2, 1), (2, 3), (3, 2)]}, {"k": 1})
print()
print(format_structure(path, "P4"))
print("bits:", encode(path))

# k = 1 asks for two independent vertices (positions 0 and 1)
print("P4 has an independent pair:", eval_so(path, psi))
w = find_witness(path, psi)
print("first witness f =", w.as_dict()["f"], "(vertex v sits at position f(v))")

# k = 2 asks for three, which a 4-vertex path does not have
path3 = make_structure(GRAPH, 4, {"E": path.relation("E")}, {"k": 2})
print("P4 has three independent vertices:", eval_so(path3, psi))
