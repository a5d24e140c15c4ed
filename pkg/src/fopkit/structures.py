"""Vocabularies, finite structures over initial segments, enumeration and
bit-string encodings.

A structure of size ``n`` has universe ``{0, ..., n-1}``. Relation
interpretations are stored as frozensets of tuples, in vocabulary order, so
structures are hashable and compare structurally. Numeric symbols (``=``,
``<=``, ``<``, ``BIT``, ``suc``, ``0``, ``max``) are never stored.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Mapping

from .errors import (
    ArityMismatchError,
    ConstantOutOfRangeError,
    EmptyUniverseError,
    EmptyWordError,
    LengthMismatchError,
    MissingInterpretationError,
    OutOfRangeError,
    VocabularyError,
)

RESERVED = frozenset(
    {
        "=", "<=", "<", "BIT", "suc", "0", "max",
        "all", "ex", "true", "false", "EX2", "ALL2", "EXINJ", "EXFUN",
    }
)

_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_']*\Z")


@dataclass(frozen=True)
class Vocabulary:
    """Relation symbols with arities plus constant symbols."""

    name: str
    relations: tuple[tuple[str, int], ...] = ()
    constants: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "relations", tuple((s, int(a)) for s, a in self.relations))
        object.__setattr__(self, "constants", tuple(self.constants))
        seen = set()
        for sym in [s for s, _ in self.relations] + list(self.constants):
            if sym in RESERVED:
                raise VocabularyError(f"symbol {sym!r} is reserved")
            if not _IDENT.match(sym):
                raise VocabularyError(f"symbol {sym!r} is not a valid identifier")
            if sym in seen:
                raise VocabularyError(f"duplicate symbol {sym!r}")
            seen.add(sym)
        for sym, arity in self.relations:
            if arity < 1:
                raise VocabularyError(f"relation {sym!r} has non-positive arity {arity}")

    def arity(self, symbol: str) -> int | None:
        for s, a in self.relations:
            if s == symbol:
                return a
        return None

    @property
    def relation_names(self) -> tuple[str, ...]:
        return tuple(s for s, _ in self.relations)

    def has_constant(self, symbol: str) -> bool:
        return symbol in self.constants

    def relation_index(self, symbol: str) -> int:
        return self.relation_names.index(symbol)

    def constant_index(self, symbol: str) -> int:
        return self.constants.index(symbol)

    def __str__(self):
        body = " ".join(
            [f"rel {s}/{a};" for s, a in self.relations] + [f"const {c};" for c in self.constants]
        )
        return f"vocab {self.name} {{ {body} }}"


GRAPH = Vocabulary("graph", (("E", 2),), ("k",))
STRING = Vocabulary("string", (("Q", 1),))


@dataclass(frozen=True)
class Structure:
    """A finite structure; build it with :func:`make_structure`.

    ``relations`` and ``constants`` follow the order of the vocabulary's
    declarations.
    """

    vocab: Vocabulary
    size: int
    relations: tuple[frozenset, ...]
    constants: tuple[int, ...]

    def relation(self, symbol: str) -> frozenset:
        return self.relations[self.vocab.relation_index(symbol)]

    def constant(self, symbol: str) -> int:
        return self.constants[self.vocab.constant_index(symbol)]

    def __str__(self):
        return format_structure(self)


def make_structure(
    vocab: Vocabulary,
    size: int,
    rels: Mapping[str, object] | None = None,
    consts: Mapping[str, int] | None = None,
) -> Structure:
    """Validate interpretations and return a :class:`Structure`."""
    rels = dict(rels or {})
    consts = dict(consts or {})
    if size < 1:
        raise EmptyUniverseError(f"universe size must be at least 1, got {size}")
    for sym in rels:
        if vocab.arity(sym) is None:
            raise MissingInterpretationError(f"{sym!r} is not a relation of {vocab.name}")
    for sym in consts:
        if not vocab.has_constant(sym):
            raise MissingInterpretationError(f"{sym!r} is not a constant of {vocab.name}")
    relations = []
    for sym, arity in vocab.relations:
        if sym not in rels:
            raise MissingInterpretationError(f"relation {sym!r} has no interpretation")
        tuples = set()
        for t in rels[sym]:
            t = tuple(t) if not isinstance(t, int) else (t,)
            if len(t) != arity:
                raise ArityMismatchError(f"{sym}{t}: expected {arity} components")
            for u in t:
                if not isinstance(u, int) or not 0 <= u < size:
                    raise OutOfRangeError(f"{sym}{t}: component {u!r} outside [0, {size})")
            tuples.add(t)
        relations.append(frozenset(tuples))
    constants = []
    for sym in vocab.constants:
        if sym not in consts:
            raise MissingInterpretationError(f"constant {sym!r} has no interpretation")
        value = consts[sym]
        if not isinstance(value, int) or not 0 <= value < size:
            raise OutOfRangeError(f"constant {sym} = {value!r} outside [0, {size})")
        constants.append(value)
    return Structure(vocab, size, tuple(relations), tuple(constants))


@lru_cache(maxsize=None)
def tuples_of(size: int, arity: int) -> tuple[tuple[int, ...], ...]:
    """All ``arity``-tuples over ``range(size)`` in lexicographic order."""
    return tuple(itertools.product(range(size), repeat=arity))


class _LazyChoices:
    """Indexable view of all relations over a tuple list (bit ``i`` of the
    index selects tuple ``i``), for pools too large to materialize."""

    def __init__(self, tuples):
        self.tuples = tuples

    def __len__(self):
        return 1 << len(self.tuples)

    def __getitem__(self, mask):
        if not 0 <= mask < len(self):
            raise IndexError(mask)
        return frozenset(t for i, t in enumerate(self.tuples) if mask >> i & 1)

    def __iter__(self):
        return (self[m] for m in range(len(self)))


@lru_cache(maxsize=64)
def _relation_choices(size: int, arity: int):
    tuples = tuples_of(size, arity)
    if len(tuples) > 16:
        return _LazyChoices(tuples)
    return tuple(
        frozenset(t for i, t in enumerate(tuples) if mask >> i & 1)
        for mask in range(1 << len(tuples))
    )


def count_structures(vocab: Vocabulary, size: int) -> int:
    total = 1
    for _, arity in vocab.relations:
        total *= 2 ** (size**arity)
    return total * size ** len(vocab.constants)


def enumerate_structures(
    vocab: Vocabulary, size: int, start: int = 0, stop: int | None = None
) -> Iterator[Structure]:
    """Yield every structure of the given size exactly once.

    Order: relations by a bit counter over the lexicographic tuple list (the
    first relation varies slowest), then constants by value (the last
    constant varies fastest). ``start``/``stop`` select a slice of that
    order, so a run can be split across workers.
    """
    if size < 1:
        raise EmptyUniverseError(f"universe size must be at least 1, got {size}")
    pools = [_relation_choices(size, a) for _, a in vocab.relations]
    pools += [range(size)] * len(vocab.constants)
    nrel = len(vocab.relations)
    total = count_structures(vocab, size)
    stop = total if stop is None else min(stop, total)
    if start >= stop:
        return
    if start == 0:
        stream = itertools.islice(itertools.product(*pools), stop)
    else:
        digits = []
        rest = start
        for pool in reversed(pools):
            rest, d = divmod(rest, len(pool))
            digits.append(d)
        stream = itertools.islice(_product_from(pools, digits[::-1]), stop - start)
    for combo in stream:
        yield Structure(vocab, size, combo[:nrel], combo[nrel:])


def _product_from(pools, digits):
    """``itertools.product(*pools)`` starting at the given mixed-radix position."""
    if not pools:
        yield ()
        return
    first, rest = pools[0], pools[1:]
    head = first[digits[0]]
    for combo in _product_from(rest, digits[1:]):
        yield (head,) + combo
    for i in range(digits[0] + 1, len(first)):
        head = first[i]
        for combo in itertools.product(*rest):
            yield (head,) + combo


def structure_index(structure: Structure) -> int:
    """Position of ``structure`` in :func:`enumerate_structures` order."""
    n = structure.size
    index = 0
    for (_, arity), rel in zip(structure.vocab.relations, structure.relations):
        tuples = tuples_of(n, arity)
        mask = sum(1 << i for i, t in enumerate(tuples) if t in rel)
        index = index * (1 << len(tuples)) + mask
    for c in structure.constants:
        index = index * n + c
    return index


def _const_width(size: int) -> int:
    return (size - 1).bit_length()


def encode(structure: Structure) -> str:
    """Characteristic vectors of the relations, then constants in binary
    (most significant bit first, ``ceil(log2 n)`` bits each)."""
    n = structure.size
    parts = []
    for (_, arity), rel in zip(structure.vocab.relations, structure.relations):
        parts.append("".join("1" if t in rel else "0" for t in tuples_of(n, arity)))
    width = _const_width(n)
    for c in structure.constants:
        parts.append(format(c, f"0{width}b") if width else "")
    return "".join(parts)


def encoding_length(vocab: Vocabulary, size: int) -> int:
    return sum(size**a for _, a in vocab.relations) + len(vocab.constants) * _const_width(size)


def decode(vocab: Vocabulary, size: int, bits: str) -> Structure:
    if size < 1:
        raise EmptyUniverseError(f"universe size must be at least 1, got {size}")
    expected = encoding_length(vocab, size)
    if len(bits) != expected or set(bits) - {"0", "1"}:
        raise LengthMismatchError(
            f"expected {expected} bits for {vocab.name} at size {size}, got {len(bits)}"
        )
    pos = 0
    rels = {}
    for sym, arity in vocab.relations:
        tuples = tuples_of(size, arity)
        chunk = bits[pos : pos + len(tuples)]
        rels[sym] = [t for t, b in zip(tuples, chunk) if b == "1"]
        pos += len(tuples)
    width = _const_width(size)
    consts = {}
    for sym in vocab.constants:
        value = int(bits[pos : pos + width], 2) if width else 0
        if value >= size:
            raise ConstantOutOfRangeError(f"constant {sym} decodes to {value} >= {size}")
        consts[sym] = value
        pos += width
    return make_structure(vocab, size, rels, consts)


def _unary_vocab(vocab: Vocabulary | None) -> Vocabulary:
    vocab = vocab or STRING
    if len(vocab.relations) != 1 or vocab.relations[0][1] != 1 or vocab.constants:
        raise VocabularyError(f"{vocab.name} is not a string vocabulary (one unary relation)")
    return vocab


def string_to_structure(word: str, vocab: Vocabulary | None = None) -> Structure:
    """Read a binary word as a structure: position 0 is the leftmost bit."""
    vocab = _unary_vocab(vocab)
    if not word:
        raise EmptyWordError("the empty word has no structure (universes are nonempty)")
    if set(word) - {"0", "1"}:
        raise ValueError(f"not a binary word: {word!r}")
    sym = vocab.relations[0][0]
    return make_structure(vocab, len(word), {sym: [(i,) for i, b in enumerate(word) if b == "1"]})


def structure_to_string(structure: Structure) -> str:
    _unary_vocab(structure.vocab)
    rel = structure.relations[0]
    return "".join("1" if (i,) in rel else "0" for i in range(structure.size))


def format_structure(structure: Structure, name: str = "A") -> str:
    """Render in the ``struct NAME : VOCAB { ... }`` text format."""
    parts = [f"size = {structure.size};"]
    for (sym, _), rel in zip(structure.vocab.relations, structure.relations):
        body = ", ".join("(" + ",".join(map(str, t)) + ")" for t in sorted(rel))
        parts.append(f"{sym} = {{{body}}};")
    for sym, value in zip(structure.vocab.constants, structure.constants):
        parts.append(f"{sym} = {value};")
    return f"struct {name} : {structure.vocab.name} {{ " + " ".join(parts) + " }"
