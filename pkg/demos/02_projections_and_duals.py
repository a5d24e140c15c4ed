"""Projections and their dual formulas.

The complement projection swaps edges and non-edges. Pulling the
independent-set sentence back through it yields the clique sentence,
after removing ``true ->`` guards and a double negation.
"""

from fopkit import apply_query, builtin, print_formula, simplify, syntactic_dual
from fopkit.library import BITS_S
from fopkit.query import format_query, is_fop
from fopkit.structures import string_to_structure, structure_to_string

comp = builtin("fop_complement")
print(format_query(comp))
print("is a projection:", bool(is_fop(comp)))

dual = syntactic_dual(comp, builtin("PSI_IS")).formula
print()
print("raw dual:       ", print_formula(dual))
print("simplified dual:", print_formula(simplify(dual)))
print("equals the clique sentence:", simplify(dual) == builtin("PSI_CL"))

# an arity-2 projection: the universe is a set of pairs ordered lexicographically
pad = builtin("fop_padding")
print()
print(format_query(pad))
for word in ("10", "011", "1101"):
    image = apply_query(pad, string_to_structure(word, BITS_S))
    print(f"  {word} -> {structure_to_string(image)}")
