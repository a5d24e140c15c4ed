"""Brute-force model checking for FO and second-order formulas.

Two evaluators share one semantics:

* :func:`interpret` walks the AST directly. It is slow and small and serves
  as the reference.
* :func:`compile_formula` turns a formula into Python source (nested
  ``any``/``all`` generator expressions) and compiles it once per
  (formula, vocabulary) pair. Everything else in the package goes through it.

Second-order ``EX2 X/a`` ranges over all ``2**(n**a)`` relations. Function
binders ``EXINJ f`` / ``EXFUN f`` (and their elaborated relational form,
when recognised) range over the ``n!`` permutations / ``n**n`` functions.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping

from . import syntax as s
from .errors import (
    BudgetExceededError,
    FreeVariableInSentenceError,
    NotExistentialPrefixError,
    OutOfRangeError,
    UnassignedFreeVariableError,
    UnknownSymbolError,
)
from .structures import Structure, Vocabulary, _relation_choices, enumerate_structures
from .transform import free_predicates, free_variables, match_function_binder

DEFAULT_BUDGET = 2**24


def default_budget() -> int:
    value = os.environ.get("FOPKIT_BUDGET")
    return int(value) if value else DEFAULT_BUDGET


# -- domains of second-order binders ----------------------------------------

@lru_cache(maxsize=None)
def _perms(n):
    return tuple(itertools.permutations(range(n)))


@lru_cache(maxsize=None)
def _funcs(n):
    return tuple(itertools.product(range(n), repeat=n))


@lru_cache(maxsize=None)
def _fun_rels(n, injective):
    source = _perms(n) if injective else _funcs(n)
    return tuple(frozenset(enumerate(f)) for f in source)


def _subsets(n, arity):
    return _relation_choices(n, arity)


def relation_domain(n: int, arity: int):
    return _subsets(n, arity)


def function_domain(n: int, injective: bool):
    return _perms(n) if injective else _funcs(n)


def estimate_cost(formula, n: int, recognize=True) -> int:
    """Number of second-order interpretations a full evaluation may visit."""
    if isinstance(formula, s.SOExists) and recognize:
        match = match_function_binder(formula)
        if match is not None:
            width = math.factorial(n) if match[1] else n**n
            return width * max(1, estimate_cost(match[2], n, recognize))
    if isinstance(formula, s.SO_QUANT):
        return 2 ** (n**formula.arity) * max(1, estimate_cost(formula.body, n, recognize))
    if isinstance(formula, s.FunExists):
        width = math.factorial(n) if formula.injective else n**n
        return width * max(1, estimate_cost(formula.body, n, recognize))
    if isinstance(formula, s.FO_QUANT):
        inner = estimate_cost(formula.body, n, recognize)
        return n * inner if inner else 0
    return sum(estimate_cost(c, n, recognize) for c in s.children(formula))


def check_budget(formula, n: int, budget: int | None = None, recognize=True):
    budget = default_budget() if budget is None else budget
    cost = estimate_cost(formula, n, recognize)
    if cost > budget:
        raise BudgetExceededError(
            f"evaluation at size {n} needs ~{cost} second-order interpretations "
            f"(budget {budget}); try a smaller size or raise FOPKIT_BUDGET",
            estimate=cost,
            budget=budget,
        )


# -- reference interpreter ---------------------------------------------------

def _term_value(term, structure, env):
    if isinstance(term, s.Var):
        return env[term.name]
    if isinstance(term, s.Const):
        return structure.constant(term.name)
    if isinstance(term, s.Zero):
        return 0
    if isinstance(term, s.Max):
        return structure.size - 1
    if isinstance(term, s.FunApp):
        return env[term.fun][_term_value(term.arg, structure, env)]
    raise TypeError(term)


def interpret(structure: Structure, formula, env: Mapping | None = None) -> bool:
    """Direct Tarskian evaluation; ``env`` maps variables to elements,
    second-order variables to tuple sets and function variables to tuples."""
    env = dict(env or {})
    return _interp(formula, structure, env)


def _interp(f, A, env):
    n = A.size
    if isinstance(f, s.Bool):
        return f.value
    if isinstance(f, s.Atom):
        vals = tuple(_term_value(t, A, env) for t in f.args)
        rel = env[f.pred] if f.pred in env else A.relation(f.pred)
        return vals in rel
    if isinstance(f, s.NumAtom):
        a = _term_value(f.left, A, env)
        b = _term_value(f.right, A, env)
        if isinstance(f, s.Eq):
            return a == b
        if isinstance(f, s.Le):
            return a <= b
        if isinstance(f, s.Lt):
            return a < b
        if isinstance(f, s.Bit):
            return (a >> b) & 1 == 1
        return b == a + 1
    if isinstance(f, s.Not):
        return not _interp(f.body, A, env)
    if isinstance(f, s.And):
        return _interp(f.left, A, env) and _interp(f.right, A, env)
    if isinstance(f, s.Or):
        return _interp(f.left, A, env) or _interp(f.right, A, env)
    if isinstance(f, s.Implies):
        return (not _interp(f.left, A, env)) or _interp(f.right, A, env)
    if isinstance(f, s.FO_QUANT):
        domain = range(n)
        key = f.var
    elif isinstance(f, s.SO_QUANT):
        domain = _subsets(n, f.arity)
        key = f.name
    elif isinstance(f, s.FunExists):
        domain = function_domain(n, f.injective)
        key = f.name
    else:
        raise TypeError(f)
    want = isinstance(f, (s.Exists, s.SOExists, s.FunExists))
    saved = env.get(key, _MISSING)
    try:
        for value in domain:
            env[key] = value
            if _interp(f.body, A, env) == want:
                return want
        return not want
    finally:
        if saved is _MISSING:
            env.pop(key, None)
        else:
            env[key] = saved


_MISSING = object()


# -- compiler ----------------------------------------------------------------

@dataclass(frozen=True)
class CompiledFormula:
    fn: object
    source: str
    fo_free: tuple
    so_free: tuple
    fun_free: tuple

    def __call__(self, structure: Structure, env: Mapping | None = None) -> bool:
        return self.fn(structure.size, structure.relations, structure.constants, env or _EMPTY)


_EMPTY: dict = {}


class _Codegen:
    def __init__(self, vocab: Vocabulary, recognize: bool):
        self.vocab = vocab
        self.recognize = recognize
        self.idents: dict[str, str] = {}
        self.rel_used: set[int] = set()
        self.const_used: set[int] = set()

    def ident(self, kind: str, name: str) -> str:
        key = f"{kind}:{name}"
        if key not in self.idents:
            self.idents[key] = f"{kind}{len(self.idents)}"
        return self.idents[key]

    def term(self, t, scope) -> str:
        if isinstance(t, s.Var):
            if t.name not in scope["fo"]:
                raise UnassignedFreeVariableError(f"variable {t.name!r} has no value")
            return self.ident("v", t.name)
        if isinstance(t, s.Const):
            if not self.vocab.has_constant(t.name):
                raise UnknownSymbolError(f"{t.name!r} is not a constant of {self.vocab.name}")
            i = self.vocab.constant_index(t.name)
            self.const_used.add(i)
            return f"c{i}"
        if isinstance(t, s.Zero):
            return "0"
        if isinstance(t, s.Max):
            return "mx"
        if isinstance(t, s.FunApp):
            if t.fun not in scope["fun"]:
                raise UnassignedFreeVariableError(f"function variable {t.fun!r} has no value")
            return f"{self.ident('f', t.fun)}[{self.term(t.arg, scope)}]"
        raise TypeError(t)

    def expr(self, f, scope) -> str:
        if isinstance(f, s.Bool):
            return "True" if f.value else "False"
        if isinstance(f, s.Atom):
            args = [self.term(t, scope) for t in f.args]
            tup = "(" + ", ".join(args) + ("," if len(args) == 1 else "") + ")"
            if f.pred in scope["so"]:
                holder = self.ident("s", f.pred)
            elif self.vocab.arity(f.pred) is not None:
                i = self.vocab.relation_index(f.pred)
                self.rel_used.add(i)
                holder = f"r{i}"
            else:
                raise UnassignedFreeVariableError(f"predicate {f.pred!r} has no interpretation")
            return f"({tup} in {holder})"
        if isinstance(f, s.NumAtom):
            a, b = self.term(f.left, scope), self.term(f.right, scope)
            if isinstance(f, s.Eq):
                return f"({a} == {b})"
            if isinstance(f, s.Le):
                return f"({a} <= {b})"
            if isinstance(f, s.Lt):
                return f"({a} < {b})"
            if isinstance(f, s.Bit):
                return f"(({a} >> {b}) & 1 == 1)"
            return f"({b} == {a} + 1)"
        if isinstance(f, s.Not):
            return f"(not {self.expr(f.body, scope)})"
        if isinstance(f, s.And):
            return f"({self.expr(f.left, scope)} and {self.expr(f.right, scope)})"
        if isinstance(f, s.Or):
            return f"({self.expr(f.left, scope)} or {self.expr(f.right, scope)})"
        if isinstance(f, s.Implies):
            return f"((not {self.expr(f.left, scope)}) or {self.expr(f.right, scope)})"
        if isinstance(f, s.FO_QUANT):
            inner = dict(scope, fo=scope["fo"] | {f.var})
            q = "all" if isinstance(f, s.Forall) else "any"
            return f"{q}({self.expr(f.body, inner)} for {self.ident('v', f.var)} in rng)"
        if isinstance(f, s.SOExists) and self.recognize:
            match = match_function_binder(f)
            if match is not None:
                name, injective, body = match
                inner = dict(scope, so=scope["so"] | {name}, fun=scope["fun"] - {name})
                return (f"any({self.expr(body, inner)} for {self.ident('s', name)} "
                        f"in _fun_rels(n, {injective}))")
        if isinstance(f, s.SO_QUANT):
            inner = dict(scope, so=scope["so"] | {f.name}, fun=scope["fun"] - {f.name})
            q = "all" if isinstance(f, s.SOForall) else "any"
            return (f"{q}({self.expr(f.body, inner)} for {self.ident('s', f.name)} "
                    f"in _subsets(n, {f.arity}))")
        if isinstance(f, s.FunExists):
            inner = dict(scope, fun=scope["fun"] | {f.name}, so=scope["so"] - {f.name})
            domain = "_perms(n)" if f.injective else "_funcs(n)"
            return f"any({self.expr(f.body, inner)} for {self.ident('f', f.name)} in {domain})"
        raise TypeError(f"not a formula: {f!r}")


_NAMESPACE = {
    "_subsets": _subsets,
    "_perms": _perms,
    "_funcs": _funcs,
    "_fun_rels": _fun_rels,
}


@lru_cache(maxsize=4096)
def compile_formula(formula, vocab: Vocabulary, fo_free=(), so_free=(), fun_free=(),
                    recognize=True) -> CompiledFormula:
    """Compile ``formula``; free names must be listed and are read from the
    ``env`` mapping at call time."""
    gen = _Codegen(vocab, recognize)
    scope = {"fo": frozenset(fo_free), "so": frozenset(so_free), "fun": frozenset(fun_free)}
    body = gen.expr(formula, scope)
    lines = ["def _compiled(n, rels, consts, env):", "    rng = range(n)", "    mx = n - 1"]
    lines += [f"    r{i} = rels[{i}]" for i in sorted(gen.rel_used)]
    lines += [f"    c{i} = consts[{i}]" for i in sorted(gen.const_used)]
    for name in fo_free:
        lines.append(f"    {gen.ident('v', name)} = env[{name!r}]")
    for name in so_free:
        lines.append(f"    {gen.ident('s', name)} = env[{name!r}]")
    for name in fun_free:
        lines.append(f"    {gen.ident('f', name)} = env[{name!r}]")
    lines.append(f"    return {body}")
    source = "\n".join(lines)
    namespace = dict(_NAMESPACE)
    exec(compile(source, "<fopkit>", "exec"), namespace)
    return CompiledFormula(namespace["_compiled"], source, tuple(fo_free), tuple(so_free),
                           tuple(fun_free))


# -- public evaluation API ---------------------------------------------------

def _split_env(structure: Structure, formula, assignment: Mapping):
    vocab = structure.vocab
    n = structure.size
    fo_free = free_variables(formula)
    missing = sorted(v for v in fo_free if v not in assignment)
    if missing:
        raise UnassignedFreeVariableError(f"no value for free variable(s) {', '.join(missing)}")
    preds = {p for p in free_predicates(formula) if vocab.arity(p) is None}
    missing = sorted(p for p in preds if p not in assignment)
    if missing:
        raise UnassignedFreeVariableError(f"no value for predicate(s) {', '.join(missing)}")
    fo, so, fun = [], [], []
    for name in sorted(fo_free):
        value = assignment[name]
        if not isinstance(value, int) or not 0 <= value < n:
            raise OutOfRangeError(f"{name} = {value!r} outside [0, {n})")
        fo.append(name)
    for name in sorted(preds):
        value = assignment[name]
        if isinstance(value, tuple) and value and all(isinstance(v, int) for v in value):
            if len(value) != n or any(not 0 <= v < n for v in value):
                raise OutOfRangeError(f"function {name} is not a map on [0, {n})")
            fun.append(name)
        else:
            for t in value:
                if any(not 0 <= u < n for u in t):
                    raise OutOfRangeError(f"{name}{t} outside [0, {n})")
            so.append(name)
    return tuple(fo), tuple(so), tuple(fun)


def eval_fo(structure: Structure, formula, assignment: Mapping | None = None,
            *, budget: int | None = None, recognize=True) -> bool:
    """Truth of ``formula`` in ``structure`` under ``assignment``.

    Second-order binders are allowed as well; free second-order variables
    are read from the assignment (tuple sets, or tuples for functions).
    """
    assignment = dict(assignment or {})
    fo, so, fun = _split_env(structure, formula, assignment)
    check_budget(formula, structure.size, budget, recognize)
    env = {k: (frozenset(map(tuple, assignment[k])) if k in so else assignment[k])
           for k in fo + so + fun}
    compiled = compile_formula(formula, structure.vocab, fo, so, fun, recognize)
    return compiled(structure, env)


def eval_so(structure: Structure, sentence, *, budget: int | None = None,
            recognize=True) -> bool:
    """Truth of a sentence (SO prefix over an FO matrix, or any nesting)."""
    free = free_variables(sentence)
    if free:
        raise FreeVariableInSentenceError(f"free variable(s) {', '.join(sorted(free))}")
    preds = {p for p in free_predicates(sentence) if structure.vocab.arity(p) is None}
    if preds:
        raise FreeVariableInSentenceError(f"free predicate(s) {', '.join(sorted(preds))}")
    check_budget(sentence, structure.size, budget, recognize)
    return compile_formula(sentence, structure.vocab, recognize=recognize)(structure)


def sentence_checker(sentence, vocab: Vocabulary, *, budget: int | None = None,
                     recognize=True):
    """Return ``check(structure) -> bool`` for repeated evaluation of one
    sentence; the budget is checked once per universe size."""
    free = free_variables(sentence)
    if free:
        raise FreeVariableInSentenceError(f"free variable(s) {', '.join(sorted(free))}")
    compiled = compile_formula(sentence, vocab, recognize=recognize)
    checked: set[int] = set()

    def check(structure: Structure) -> bool:
        if structure.size not in checked:
            check_budget(sentence, structure.size, budget, recognize)
            checked.add(structure.size)
        return compiled(structure)

    return check


def models(vocab: Vocabulary, size: int, sentence, *, budget: int | None = None) -> list:
    """All size-``size`` structures satisfying ``sentence``, in enumeration order."""
    check = sentence_checker(sentence, vocab, budget=budget)
    return [A for A in enumerate_structures(vocab, size) if check(A)]


@dataclass(frozen=True)
class Witness:
    """Values for the leading existential second-order block.

    Relations are frozensets of tuples; function variables are tuples
    ``(f(0), ..., f(n-1))``.
    """

    values: tuple[tuple[str, object], ...]

    def as_dict(self) -> dict:
        return dict(self.values)

    def as_relations(self) -> dict:
        return {k: (frozenset(enumerate(v)) if isinstance(v, tuple) else v)
                for k, v in self.values}


def _existential_prefix(sentence):
    binders = []
    node = sentence
    while isinstance(node, (s.SOExists, s.SOForall, s.FunExists)):
        if isinstance(node, s.SOForall):
            break
        if isinstance(node, s.FunExists):
            binders.append((node.name, "fun", node.injective))
        else:
            binders.append((node.name, "rel", node.arity))
        node = node.body
    return binders, node


def find_witness(structure: Structure, sentence, *, budget: int | None = None):
    """First assignment (in enumeration order) to the leading existential
    second-order block that makes the rest true, or ``None``."""
    if isinstance(sentence, s.SOForall):
        raise NotExistentialPrefixError("leading second-order quantifier is universal")
    free = free_variables(sentence)
    if free:
        raise FreeVariableInSentenceError(f"free variable(s) {', '.join(sorted(free))}")
    check_budget(sentence, structure.size, budget, recognize=False)
    binders, matrix = _existential_prefix(sentence)
    n = structure.size
    so = tuple(name for name, kind, _ in binders if kind == "rel")
    fun = tuple(name for name, kind, _ in binders if kind == "fun")
    compiled = compile_formula(matrix, structure.vocab, (), so, fun)
    domains = [
        function_domain(n, extra) if kind == "fun" else relation_domain(n, extra)
        for _, kind, extra in binders
    ]
    names = [name for name, _, _ in binders]
    for combo in itertools.product(*domains):
        # later binders shadow earlier ones with the same name
        env = dict(zip(names, combo))
        if compiled(structure, env):
            return Witness(tuple(env.items()))
    return None


def verify_witness(structure: Structure, sentence, witness: Witness) -> bool:
    binders, matrix = _existential_prefix(sentence)
    return eval_fo(structure, matrix, witness.as_dict())


@lru_cache(maxsize=4096)
def compile_filter(formula, vocab: Vocabulary, variables: tuple):
    """Compile ``formula`` with free ``variables`` into a function returning
    the satisfying tuples of a structure, in lexicographic order."""
    gen = _Codegen(vocab, True)
    scope = {"fo": frozenset(variables), "so": frozenset(), "fun": frozenset()}
    body = gen.expr(formula, scope)
    names = [gen.ident("v", v) for v in variables]
    tup = "(" + ", ".join(names) + ("," if len(names) == 1 else "") + ")"
    loops = " ".join(f"for {name} in rng" for name in names)
    lines = ["def _compiled(n, rels, consts):", "    rng = range(n)", "    mx = n - 1"]
    lines += [f"    r{i} = rels[{i}]" for i in sorted(gen.rel_used)]
    lines += [f"    c{i} = consts[{i}]" for i in sorted(gen.const_used)]
    lines.append(f"    return [{tup} {loops} if {body}]")
    namespace = dict(_NAMESPACE)
    exec(compile("\n".join(lines), "<fopkit>", "exec"), namespace)
    fn = namespace["_compiled"]
    return lambda structure: fn(structure.size, structure.relations, structure.constants)
