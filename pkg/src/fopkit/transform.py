"""Syntactic analyses and rewrites: free variables, capture-avoiding
substitution, elaboration of function binders, simplification.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import syntax as s
from .errors import FunctionTermOutsideBinderError

_FRESH = re.compile(r"_v(\d+)\Z")


# -- variables and names ----------------------------------------------------

def term_vars(term) -> set[str]:
    if isinstance(term, s.Var):
        return {term.name}
    if isinstance(term, s.FunApp):
        return term_vars(term.arg)
    return set()


def free_variables(formula) -> set[str]:
    """Free first-order variables."""
    if isinstance(formula, (s.Atom, s.NumAtom)):
        out = set()
        for t in s.atom_terms(formula):
            out |= term_vars(t)
        return out
    if isinstance(formula, s.FO_QUANT):
        return free_variables(formula.body) - {formula.var}
    out = set()
    for child in s.children(formula):
        out |= free_variables(child)
    return out


def free_predicates(formula) -> set[str]:
    """Predicate and function names used but not bound by a second-order or
    function binder (vocabulary relations included)."""
    if isinstance(formula, s.Atom):
        out = {formula.pred}
        for t in formula.args:
            out |= _term_funs(t)
        return out
    if isinstance(formula, s.NumAtom):
        return _term_funs(formula.left) | _term_funs(formula.right)
    if isinstance(formula, (s.SOExists, s.SOForall, s.FunExists)):
        return free_predicates(formula.body) - {formula.name}
    out = set()
    for child in s.children(formula):
        out |= free_predicates(child)
    return out


def _term_funs(term) -> set[str]:
    if isinstance(term, s.FunApp):
        return {term.fun} | _term_funs(term.arg)
    return set()


def all_names(formula) -> set[str]:
    """Every identifier occurring in ``formula``: variables, predicates,
    constants, bound names."""
    out = set()
    for node in s.subformulas(formula):
        if isinstance(node, s.FO_QUANT):
            out.add(node.var)
        elif isinstance(node, (s.SOExists, s.SOForall, s.FunExists)):
            out.add(node.name)
        elif isinstance(node, s.Atom):
            out.add(node.pred)
        for t in s.atom_terms(node):
            out |= _term_names(t)
    return out


def _term_names(term) -> set[str]:
    if isinstance(term, (s.Var, s.Const)):
        return {term.name}
    if isinstance(term, s.FunApp):
        return {term.fun} | _term_names(term.arg)
    return set()


class FreshNames:
    """Generates ``_v0, _v1, ...`` skipping anything in ``used``.

    The parser rejects the ``_`` namespace, so generated names never collide
    with user-written ones.
    """

    def __init__(self, used=(), prefix="_v"):
        self.prefix = prefix
        self.used = set(used)
        start = 0
        for name in self.used:
            m = _FRESH.match(name)
            if m and prefix == "_v":
                start = max(start, int(m.group(1)) + 1)
        self.counter = start

    def __call__(self) -> str:
        while True:
            name = f"{self.prefix}{self.counter}"
            self.counter += 1
            if name not in self.used:
                self.used.add(name)
                return name


# -- substitution -----------------------------------------------------------

def substitute_term(term, mapping):
    if isinstance(term, s.Var):
        return mapping.get(term.name, term)
    if isinstance(term, s.FunApp):
        return s.FunApp(term.fun, substitute_term(term.arg, mapping))
    return term


def substitute(formula, mapping: dict, fresh: FreshNames | None = None):
    """Replace free variables by terms, renaming bound variables that would
    capture a variable of a replacement term."""
    mapping = {k: v for k, v in mapping.items() if not (isinstance(v, s.Var) and v.name == k)}
    if not mapping:
        return formula
    if fresh is None:
        used = all_names(formula)
        for t in mapping.values():
            used |= _term_names(t)
        fresh = FreshNames(used | set(mapping))
    return _subst(formula, mapping, fresh)


def _subst(f, mapping, fresh):
    if not mapping:
        return f
    if isinstance(f, s.Bool):
        return f
    if isinstance(f, s.Atom):
        return s.Atom(f.pred, tuple(substitute_term(t, mapping) for t in f.args))
    if isinstance(f, s.NumAtom):
        return type(f)(substitute_term(f.left, mapping), substitute_term(f.right, mapping))
    if isinstance(f, s.Not):
        return s.Not(_subst(f.body, mapping, fresh))
    if isinstance(f, s.BINARY):
        return type(f)(_subst(f.left, mapping, fresh), _subst(f.right, mapping, fresh))
    if isinstance(f, s.FO_QUANT):
        inner = {k: v for k, v in mapping.items() if k != f.var}
        live = free_variables(f.body)
        inner = {k: v for k, v in inner.items() if k in live}
        captured = any(f.var in term_vars(v) for v in inner.values())
        var, body = f.var, f.body
        if captured:
            var = fresh()
            body = _subst(body, {f.var: s.Var(var)}, fresh)
        return type(f)(var, _subst(body, inner, fresh))
    if isinstance(f, s.SO_QUANT):
        return type(f)(f.name, f.arity, _subst(f.body, mapping, fresh))
    if isinstance(f, s.FunExists):
        return s.FunExists(f.name, f.injective, _subst(f.body, mapping, fresh))
    raise TypeError(f"not a formula: {f!r}")


def rename_predicate(formula, old: str, new: str):
    """Rename free occurrences of predicate/function ``old``."""
    def term(t):
        if isinstance(t, s.FunApp):
            return s.FunApp(new if t.fun == old else t.fun, term(t.arg))
        return t

    def go(f):
        if isinstance(f, s.Atom):
            return s.Atom(new if f.pred == old else f.pred, tuple(term(t) for t in f.args))
        if isinstance(f, s.NumAtom):
            return type(f)(term(f.left), term(f.right))
        if isinstance(f, (s.SOExists, s.SOForall)) and f.name == old:
            return f
        if isinstance(f, s.FunExists) and f.name == old:
            return f
        return _map_children(f, go)

    return go(formula)


def _map_children(f, fn):
    if isinstance(f, s.Not):
        return s.Not(fn(f.body))
    if isinstance(f, s.BINARY):
        return type(f)(fn(f.left), fn(f.right))
    if isinstance(f, s.FO_QUANT):
        return type(f)(f.var, fn(f.body))
    if isinstance(f, s.SO_QUANT):
        return type(f)(f.name, f.arity, fn(f.body))
    if isinstance(f, s.FunExists):
        return s.FunExists(f.name, f.injective, fn(f.body))
    return f


# -- elaboration of function binders ----------------------------------------

def totality_axiom(f: str, a: str, b: str, c: str):
    """``f`` is a total function: every ``a`` has exactly one image."""
    return s.And(
        s.Forall(a, s.Exists(b, s.Atom(f, (s.Var(a), s.Var(b))))),
        s.forall(
            [a, b, c],
            s.Implies(
                s.And(s.Atom(f, (s.Var(a), s.Var(b))), s.Atom(f, (s.Var(a), s.Var(c)))),
                s.Eq(s.Var(b), s.Var(c)),
            ),
        ),
    )


def injectivity_axiom(f: str, a: str, b: str, c: str):
    return s.forall(
        [a, b, c],
        s.Implies(
            s.And(s.Atom(f, (s.Var(a), s.Var(c))), s.Atom(f, (s.Var(b), s.Var(c)))),
            s.Eq(s.Var(a), s.Var(b)),
        ),
    )


def has_sugar(formula) -> bool:
    for node in s.subformulas(formula):
        if isinstance(node, s.FunExists):
            return True
        if any(_term_funs(t) for t in s.atom_terms(node)):
            return True
    return False


def elaborate(formula):
    """Expand ``EXINJ``/``EXFUN`` binders into relational second-order
    quantifiers over their FO axioms, and ``f(t)`` terms into existential
    lookups. Already-elaborated formulas come back unchanged."""
    if not has_sugar(formula):
        return formula
    fresh = FreshNames(all_names(formula))
    out = _elab(formula, fresh)
    for node in s.subformulas(out):
        for t in s.atom_terms(node):
            if _term_funs(t):
                raise FunctionTermOutsideBinderError(
                    f"function term {sorted(_term_funs(t))[0]}(...) has no enclosing binder"
                )
    return out


def _elab(f, fresh):
    if isinstance(f, s.FunExists):
        body = _expand_terms(_elab(f.body, fresh), f.name, fresh)
        a, b, c = fresh(), fresh(), fresh()
        parts = [totality_axiom(f.name, a, b, c)]
        if f.injective:
            parts.append(injectivity_axiom(f.name, a, b, c))
        return s.SOExists(f.name, 2, s.conj(*parts, body))
    return _map_children(f, lambda g: _elab(g, fresh))


def _find_app(term, fun):
    """Innermost ``fun(...)`` application inside ``term``."""
    if isinstance(term, s.FunApp):
        inner = _find_app(term.arg, fun)
        if inner is not None:
            return inner
        if term.fun == fun:
            return term
    return None


def _replace_term(term, target, replacement):
    if term == target:
        return replacement
    if isinstance(term, s.FunApp):
        return s.FunApp(term.fun, _replace_term(term.arg, target, replacement))
    return term


def _expand_atom(atom, fun, fresh):
    terms = s.atom_terms(atom)
    app = next((a for a in (_find_app(t, fun) for t in terms) if a is not None), None)
    if app is None:
        return atom
    y = fresh()
    new_terms = tuple(_replace_term(t, app, s.Var(y)) for t in terms)
    if isinstance(atom, s.Atom):
        replaced = s.Atom(atom.pred, new_terms)
    else:
        replaced = type(atom)(*new_terms)
    return s.Exists(y, s.And(s.Atom(fun, (app.arg, s.Var(y))), _expand_atom(replaced, fun, fresh)))


def _expand_terms(f, fun, fresh):
    if isinstance(f, (s.Atom, s.NumAtom)):
        return _expand_atom(f, fun, fresh)
    if isinstance(f, (s.SOExists, s.SOForall)) and f.name == fun:
        return f
    return _map_children(f, lambda g: _expand_terms(g, fun, fresh))


def match_function_binder(formula):
    """Recognise the shape produced by :func:`elaborate`.

    Returns ``(name, injective, body)`` when ``formula`` is
    ``EX2 f/2. Tot(f) & [Inj(f) &] body`` with the exact generated axioms,
    else ``None``.
    """
    if not (isinstance(formula, s.SOExists) and formula.arity == 2):
        return None
    top = formula.body
    if not isinstance(top, s.And):
        return None
    f, axioms, body = formula.name, top.left, top.right
    try:
        if isinstance(axioms.left, s.And):
            tot, inj = axioms.left, axioms.right
        else:
            tot, inj = axioms, None
        a, b = tot.left.var, tot.left.body.var
        c = tot.right.body.body.var
    except AttributeError:
        return None
    if tot != totality_axiom(f, a, b, c):
        return None
    if inj is None:
        return f, False, body
    if inj == injectivity_axiom(f, a, b, c):
        return f, True, body
    return None


# -- numeric analysis -------------------------------------------------------

def _term_is_numeric(term) -> bool:
    return isinstance(term, (s.Var, s.Zero, s.Max))


def is_numerical(formula) -> bool:
    """True iff every atom is a numeric atom over variables, ``0`` and
    ``max`` (no relations, vocabulary constants or second-order symbols)."""
    for node in s.subformulas(formula):
        if isinstance(node, (s.Atom, s.SO_QUANT, s.FunExists)):
            return False
        if isinstance(node, s.NumAtom):
            if not (_term_is_numeric(node.left) and _term_is_numeric(node.right)):
                return False
    return True


def is_guard(formula) -> bool:
    """Like :func:`is_numerical` but vocabulary constants are allowed."""
    for node in s.subformulas(formula):
        if isinstance(node, (s.Atom, s.SO_QUANT, s.FunExists)):
            return False
        if any(isinstance(t, s.FunApp) for t in s.atom_terms(node)):
            return False
    return True


@dataclass(frozen=True)
class SentenceClass:
    kind: str  # "FO", "SO-prefix" or "SO"
    prefix: tuple[str, ...] = ()

    def __str__(self):
        if self.kind == "SO-prefix":
            return "SO" + "".join("E" if q == "ex" else "A" for q in self.prefix)
        return self.kind


def classify(formula) -> SentenceClass:
    prefix = []
    node = formula
    while isinstance(node, (s.SOExists, s.SOForall, s.FunExists)):
        prefix.append("all" if isinstance(node, s.SOForall) else "ex")
        node = node.body
    nested = any(isinstance(n, (s.SO_QUANT, s.FunExists)) for n in s.subformulas(node))
    if nested:
        return SentenceClass("SO")
    if not prefix:
        return SentenceClass("FO")
    return SentenceClass("SO-prefix", tuple(prefix))


# -- simplification ---------------------------------------------------------

def simplify(formula):
    """Eliminate double negation, push negation through connectives down to
    literals (quantifiers are left in place) and fold ``true``/``false``."""
    return _simp(formula)


def _neg(f):
    """Simplified negation of an already simplified formula."""
    if isinstance(f, s.Bool):
        return s.Bool(not f.value)
    if isinstance(f, s.Not):
        return f.body
    if isinstance(f, s.And):
        return _or(_neg(f.left), _neg(f.right))
    if isinstance(f, s.Or):
        return _and(_neg(f.left), _neg(f.right))
    if isinstance(f, s.Implies):
        return _and(f.left, _neg(f.right))
    return s.Not(f)


def _and(a, b):
    if a == s.FALSE or b == s.FALSE:
        return s.FALSE
    if a == s.TRUE:
        return b
    if b == s.TRUE:
        return a
    return s.And(a, b)


def _or(a, b):
    if a == s.TRUE or b == s.TRUE:
        return s.TRUE
    if a == s.FALSE:
        return b
    if b == s.FALSE:
        return a
    return s.Or(a, b)


def _implies(a, b):
    if a == s.TRUE:
        return b
    if a == s.FALSE or b == s.TRUE:
        return s.TRUE
    if b == s.FALSE:
        return _neg(a)
    return s.Implies(a, b)


def _simp(f):
    if isinstance(f, (s.Bool, s.Atom, s.NumAtom)):
        return f
    if isinstance(f, s.Not):
        return _neg(_simp(f.body))
    if isinstance(f, s.And):
        return _and(_simp(f.left), _simp(f.right))
    if isinstance(f, s.Or):
        return _or(_simp(f.left), _simp(f.right))
    if isinstance(f, s.Implies):
        return _implies(_simp(f.left), _simp(f.right))
    body = _simp(f.body)
    # universes are nonempty, so quantifying a constant gives that constant
    if isinstance(body, s.Bool):
        return body
    if isinstance(f, s.FO_QUANT):
        return type(f)(f.var, body)
    if isinstance(f, s.SO_QUANT):
        return type(f)(f.name, f.arity, body)
    return s.FunExists(f.name, f.injective, body)
