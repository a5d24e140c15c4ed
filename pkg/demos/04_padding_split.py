"""The padding projection and its image.

Each word ``w`` maps to ``w1``, so for every word exactly one of ``w0`` and
``w1`` is an image. Parity reduces to padded parity through it.
"""

import itertools

from fopkit import apply_query, builtin, verify_reduction
from fopkit.library import BITS_S
from fopkit.query import check_injective
from fopkit.structures import string_to_structure, structure_to_string

pad = builtin("fop_padding")
images = set()
for n in range(2, 7):
    for bits in itertools.product("01", repeat=n):
        word = "".join(bits)
        images.add(structure_to_string(apply_query(pad, string_to_structure(word, BITS_S))))

words = ["".join(b) for n in range(2, 7) for b in itertools.product("01", repeat=n)]
split = all((w + "0" in images) != (w + "1" in images) for w in words)
print(f"{len(words)} words of length 2..6; exactly one of w0, w1 is an image: {split}")
print("injective on lengths 2..6:", check_injective(pad, 6, min_size=2).injective)
print("PARITY -> PARITY_PADDED:",
      verify_reduction(pad, builtin("PARITY"), builtin("PARITY_PADDED"), 6, min_size=2).verdict)

# length-1 words are degenerate: no position 1 exists to carry the extra bit
print("1 ->", structure_to_string(apply_query(pad, string_to_structure("1", BITS_S))))
