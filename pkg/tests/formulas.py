"""Random well-formed formulas for round-trip and evaluator cross-checks."""

from __future__ import annotations

import random

from hypothesis import strategies as st

from fopkit import syntax as s
from fopkit.structures import Vocabulary

VARS = ("x", "y", "z", "u", "w")
SO_NAMES = ("P", "R")
FUN_NAMES = ("f", "g")


class FormulaGen:
    """Seeded generator. ``closed=True`` only produces sentences."""

    def __init__(self, rng: random.Random, vocab: Vocabulary, *, closed=False,
                 allow_so=True, allow_fun=True, allow_bit=True, so_arity_max=2):
        self.rng = rng
        self.vocab = vocab
        self.closed = closed
        self.allow_so = allow_so
        self.allow_fun = allow_fun
        self.allow_bit = allow_bit
        self.so_arity_max = so_arity_max

    def formula(self, depth: int, bound=(), so=(), funs=()):
        rng = self.rng
        if depth <= 0 or rng.random() < 0.2:
            return self.atom(bound, so, funs)
        choice = rng.choice(["not", "bin", "bin", "fo", "fo", "so", "fun"])
        if choice == "not":
            return s.Not(self.formula(depth - 1, bound, so, funs))
        if choice == "bin":
            node = rng.choice([s.And, s.Or, s.Implies])
            return node(self.formula(depth - 1, bound, so, funs),
                        self.formula(depth - 1, bound, so, funs))
        if choice == "fo":
            var = rng.choice(VARS)
            node = rng.choice([s.Forall, s.Exists])
            return node(var, self.formula(depth - 1, bound + (var,), so, funs))
        if choice == "so" and self.allow_so:
            name = rng.choice(SO_NAMES)
            arity = rng.randint(1, self.so_arity_max)
            node = rng.choice([s.SOExists, s.SOForall])
            inner = tuple(p for p in so if p[0] != name) + ((name, arity),)
            return node(name, arity, self.formula(depth - 1, bound, inner,
                                                   tuple(f for f in funs if f != name)))
        if choice == "fun" and self.allow_fun:
            name = rng.choice(FUN_NAMES)
            inner_funs = tuple(f for f in funs if f != name) + (name,)
            return s.FunExists(name, rng.random() < 0.5,
                               self.formula(depth - 1, bound,
                                            tuple(p for p in so if p[0] != name), inner_funs))
        return self.atom(bound, so, funs)

    def simple_term(self, bound):
        rng = self.rng
        options = ["zero", "max"]
        if bound:
            options += ["var"] * 4
        elif not self.closed:
            options += ["var"] * 2
        if self.vocab.constants:
            options.append("const")
        kind = rng.choice(options)
        if kind == "zero":
            return s.Zero()
        if kind == "max":
            return s.Max()
        if kind == "const":
            return s.Const(rng.choice(self.vocab.constants))
        return s.Var(rng.choice(bound if bound else VARS))

    def term(self, bound, funs):
        if funs and self.rng.random() < 0.3:
            return s.FunApp(self.rng.choice(funs), self.simple_term(bound))
        return self.simple_term(bound)

    def atom(self, bound, so, funs):
        rng = self.rng
        kinds = ["bool", "num", "num", "rel", "rel"]
        if so:
            kinds += ["so", "so"]
        kind = rng.choice(kinds)
        if kind == "bool":
            return rng.choice([s.TRUE, s.FALSE])
        if kind == "num":
            nodes = [s.Eq, s.Le, s.Lt, s.Suc] + ([s.Bit] if self.allow_bit else [])
            node = rng.choice(nodes)
            atom = node(self.term(bound, funs), self.term(bound, funs))
            if node is s.Eq and rng.random() < 0.3:
                return s.Not(atom)
            return atom
        if kind == "so":
            name, arity = rng.choice(so)
            return s.Atom(name, tuple(self.term(bound, funs) for _ in range(arity)))
        sym, arity = rng.choice(self.vocab.relations)
        return s.Atom(sym, tuple(self.term(bound, funs) for _ in range(arity)))


def random_formula(seed: int, vocab: Vocabulary, depth: int = 5, **kwargs):
    return FormulaGen(random.Random(seed), vocab, **kwargs).formula(depth)


def formulas(vocab: Vocabulary, depth: int = 5, **kwargs):
    """Hypothesis strategy over generator seeds."""
    return st.integers(min_value=0, max_value=2**32).map(
        lambda seed: random_formula(seed, vocab, depth, **kwargs))
