"""Dual formulas of first-order queries and characteristic sentences.

For a query ``I`` from ``tau`` to ``sigma`` and a ``sigma``-formula ``theta``,
:func:`syntactic_dual` builds a ``tau``-formula true in ``A`` exactly when
``theta`` holds in ``I(A)``:

======================  ==================================================
``sigma`` construct     translation over ``tau``
======================  ==================================================
variable ``x``          ``k`` variables ``x_1..x_k``
``all x. t``            ``all x_1..x_k. (U(x_1..x_k) -> t')``
``ex x. t``             ``ex x_1..x_k. (U(x_1..x_k) & t')``
``R(x, y, ...)``        relation formula of ``I`` at the expanded tuples
``EX2 X/a``             ``EX2 X/(k*a)``
``s = t``               componentwise equality
``s <= t``, ``s < t``   lexicographic comparison
``suc(s, t)``           ``s < t`` with no universe tuple strictly between
``0``, ``max``          least / greatest universe tuple, bound by a fresh
                        existential (``(0,..,0)`` / ``(max,..,max)`` when
                        the universe formula is ``true``)
constant ``c``          the tuple of source constants defining ``c``
``BIT``                 unsupported unless ``k = 1`` and ``U = true``
======================  ==================================================

``U`` is the universe formula. When ``k = 1`` and ``U`` is literally
``true`` the universe is unchanged, every numeric atom and function binder
carries over as is, and variables keep their names.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import syntax as s
from .errors import (
    BudgetExceededError,
    NonElaboratedInputError,
    QueryError,
    UnsupportedNumericAtomError,
)
from .evaluate import default_budget, eval_so, sentence_checker
from .query import Query, apply_query, image_universe, try_apply
from .structures import (
    Structure,
    count_structures,
    enumerate_structures,
    make_structure,
)
from .transform import FreshNames, all_names, free_predicates, has_sugar, substitute


@dataclass(frozen=True)
class DualResult:
    formula: object
    notes: tuple[str, ...] = ()


class _Dualizer:
    def __init__(self, query: Query, theta):
        self.q = query
        self.k = query.arity
        self.trivial = self.k == 1 and query.universe == s.TRUE
        used = set(all_names(theta))
        used |= set(query.source.relation_names) | set(query.source.constants)
        used |= set(query.universe_vars)
        for _, variables, formula in query.relations:
            used |= set(variables) | all_names(formula)
        used |= all_names(query.universe)
        self.used = used
        self.fresh = FreshNames(used)
        self.reserved = set(query.source.relation_names) | set(query.source.constants)
        self.notes: list[str] = []

    def note(self, text):
        if text not in self.notes:
            self.notes.append(text)

    # -- names --
    def expand_var(self, name: str) -> tuple[str, ...]:
        if self.k == 1:
            if name in self.reserved:
                return (self.fresh(),)
            return (name,)
        names = tuple(f"_{name}_{i}" for i in range(1, self.k + 1))
        if any(n in self.used for n in names):
            return tuple(self.fresh() for _ in range(self.k))
        return names

    def rename_pred(self, name: str) -> str:
        return self.fresh() if name in self.reserved else name

    # -- helpers --
    def universe_at(self, names):
        mapping = {u: s.Var(v) for u, v in zip(self.q.universe_vars, names)}
        return substitute(self.q.universe, mapping, self.fresh)

    def lex_lt(self, a, b):
        if self.k == 1:
            return s.Lt(a[0], b[0])
        return s.disj(*(
            s.conj(*(s.Eq(a[j], b[j]) for j in range(i)), s.Lt(a[i], b[i]))
            for i in range(self.k)
        ))

    def lex_le(self, a, b):
        if self.k == 1:
            return s.Le(a[0], b[0])
        return s.Or(self.lex_lt(a, b), self.tuple_eq(a, b))

    def tuple_eq(self, a, b):
        return s.conj(*(s.Eq(x, y) for x, y in zip(a, b)))

    def fresh_tuple(self):
        return tuple(self.fresh() for _ in range(self.k))

    # -- terms --
    def term(self, t, env, wrappers):
        if isinstance(t, s.Var):
            if ("fo", t.name) not in env:
                env[("fo", t.name)] = self.expand_var(t.name)
            return tuple(s.Var(v) for v in env[("fo", t.name)])
        if isinstance(t, s.Const):
            return tuple(s.Const(c) for c in self.q.constant_tuple(t.name))
        if isinstance(t, (s.Zero, s.Max)):
            if self.q.universe == s.TRUE:
                return (t,) * self.k
            names = self.fresh_tuple()
            wrappers.append(("min" if isinstance(t, s.Zero) else "max", names))
            self.note(f"{'0' if isinstance(t, s.Zero) else 'max'} expanded to the "
                      f"{'least' if isinstance(t, s.Zero) else 'greatest'} universe tuple")
            return tuple(s.Var(v) for v in names)
        if isinstance(t, s.FunApp):
            fun = env.get(("fun", t.fun), t.fun)
            return (s.FunApp(fun, self.term(t.arg, env, wrappers)[0]),)
        raise TypeError(t)

    def wrap(self, atom, wrappers):
        for kind, names in reversed(wrappers):
            z = tuple(s.Var(v) for v in names)
            others = self.fresh_tuple()
            w = tuple(s.Var(v) for v in others)
            extreme = self.lex_le(z, w) if kind == "min" else self.lex_le(w, z)
            bound = s.forall(others, s.Implies(self.universe_at(others), extreme))
            atom = s.exists(names, s.conj(self.universe_at(names), bound, atom))
        return atom

    # -- formulas --
    def go(self, f, env):
        if isinstance(f, s.Bool):
            return f
        if isinstance(f, s.Not):
            return s.Not(self.go(f.body, env))
        if isinstance(f, s.BINARY):
            return type(f)(self.go(f.left, env), self.go(f.right, env))
        if isinstance(f, s.FO_QUANT):
            names = self.expand_var(f.var)
            inner = dict(env)
            inner[("fo", f.var)] = names
            body = self.go(f.body, inner)
            guard = self.universe_at(names)
            if isinstance(f, s.Forall):
                return s.forall(names, s.Implies(guard, body))
            return s.exists(names, s.And(guard, body))
        if isinstance(f, s.SO_QUANT):
            name = self.rename_pred(f.name)
            inner = dict(env)
            inner[("so", f.name)] = name
            inner.pop(("fun", f.name), None)
            return type(f)(name, self.k * f.arity, self.go(f.body, inner))
        if isinstance(f, s.FunExists):
            name = self.rename_pred(f.name)
            inner = dict(env)
            inner[("fun", f.name)] = name
            inner.pop(("so", f.name), None)
            return s.FunExists(name, f.injective, self.go(f.body, inner))
        if isinstance(f, s.Atom):
            wrappers = []
            parts = [self.term(t, env, wrappers) for t in f.args]
            flat = tuple(x for p in parts for x in p)
            if ("so", f.pred) in env:
                atom = s.Atom(env[("so", f.pred)], flat)
            elif self.q.target.arity(f.pred) is not None:
                variables, formula = self.q.relation_formula(f.pred)
                atom = substitute(formula, dict(zip(variables, flat)), self.fresh)
            else:
                raise QueryError(f"{f.pred} is not a relation of {self.q.target.name}")
            return self.wrap(atom, wrappers)
        if isinstance(f, s.NumAtom):
            wrappers = []
            a = self.term(f.left, env, wrappers)
            b = self.term(f.right, env, wrappers)
            return self.wrap(self.numeric(f, a, b), wrappers)
        raise TypeError(f"not a formula: {f!r}")

    def numeric(self, f, a, b):
        if isinstance(f, s.Eq):
            return self.tuple_eq(a, b)
        if isinstance(f, s.Le):
            return self.lex_le(a, b)
        if isinstance(f, s.Lt):
            return self.lex_lt(a, b)
        if isinstance(f, s.Suc):
            if self.trivial:
                return s.Suc(a[0], b[0])
            self.note("suc expanded to the lexicographic successor within the universe")
            w_names = self.fresh_tuple()
            w = tuple(s.Var(v) for v in w_names)
            between = s.exists(w_names, s.conj(self.universe_at(w_names),
                                               self.lex_lt(a, w), self.lex_lt(w, b)))
            return s.And(self.lex_lt(a, b), s.Not(between))
        if isinstance(f, s.Bit):
            if self.trivial:
                return s.Bit(a[0], b[0])
            raise UnsupportedNumericAtomError(
                f"BIT cannot be translated through a query of arity {self.k}"
                + ("" if self.k > 1 else " with a restricted universe")
                + ": the rank of a tuple is not first-order definable from its components"
            )
        raise TypeError(f)


def syntactic_dual(query: Query, theta) -> DualResult:
    """Translate ``theta`` (over the query's target vocabulary) into a
    formula over its source vocabulary with ``A |= result`` iff
    ``query(A) |= theta``."""
    d = _Dualizer(query, theta)
    if has_sugar(theta) and not d.trivial:
        raise NonElaboratedInputError(
            "function binders survive the dual only for arity-1 queries with universe true; "
            "elaborate the formula first"
        )
    unknown = {p for p in free_predicates(theta) if query.target.arity(p) is None}
    if unknown:
        raise QueryError(f"{', '.join(sorted(unknown))} not relations of {query.target.name}")
    return DualResult(d.go(theta, {}), tuple(d.notes))


def semantic_dual_eval(query: Query, theta, structure: Structure) -> bool:
    """Reference for :func:`syntactic_dual`: evaluate ``theta`` on ``query(A)``."""
    return eval_so(apply_query(query, structure), theta)


# -- images and characteristic sentences ------------------------------------

def _universe_count(query: Query, size: int) -> int:
    probe = make_structure(
        query.source, size,
        {r: () for r in query.source.relation_names},
        dict.fromkeys(query.source.constants, 0),
    )
    return len(image_universe(query, probe))


def image_membership(p: Query, B: Structure, max_preimage_size: int,
                     budget: int | None = None) -> Structure | None:
    """First source structure (by size, then enumeration order) mapped onto ``B``."""
    budget = default_budget() if budget is None else budget
    spent = 0
    for m in range(1, max_preimage_size + 1):
        if _universe_count(p, m) != B.size:
            continue
        spent += count_structures(p.source, m)
        if spent > budget:
            raise BudgetExceededError(f"preimage search exceeds the budget {budget}",
                                      estimate=spent, budget=budget)
        for A in enumerate_structures(p.source, m):
            if try_apply(p, A) == B:
                return A
    return None


def image_index(p: Query, max_preimage_size: int, budget: int | None = None) -> dict:
    """Map every image structure to its first preimage, for sources up to
    ``max_preimage_size``."""
    budget = default_budget() if budget is None else budget
    total = sum(count_structures(p.source, m) for m in range(1, max_preimage_size + 1))
    if total > budget:
        raise BudgetExceededError(f"{total} source structures exceed the budget {budget}",
                                  estimate=total, budget=budget)
    index: dict = {}
    for m in range(1, max_preimage_size + 1):
        for A in enumerate_structures(p.source, m):
            B = try_apply(p, A)
            if B is not None and B not in index:
                index[B] = A
    return index


@dataclass
class CharacteristicReport:
    verdict: str  # "verified" or "refuted"
    counterexample: Structure | None
    beta_value: bool | None
    preimage: Structure | None
    sizes: tuple[int, int]
    checked: int
    max_preimage_size: int
    # filled when every structure is scanned (exhaustive=True)
    false_positives: int | None = None
    false_negatives: int | None = None
    examples: dict = field(default_factory=dict)

    @property
    def verified(self) -> bool:
        return self.verdict == "verified"


def verify_characteristic(beta, p: Query, size_bound: int, *,
                          max_preimage_size: int | None = None,
                          exhaustive: bool = False,
                          budget: int | None = None) -> CharacteristicReport:
    """Compare ``beta`` with image membership on every target structure of
    size at most ``size_bound``.

    ``exhaustive=True`` scans everything and counts structures where ``beta``
    holds outside the image (false positives) and image structures where it
    fails (false negatives); otherwise the scan stops at the first
    disagreement.
    """
    max_pre = size_bound if max_preimage_size is None else max_preimage_size
    index = image_index(p, max_pre, budget)
    check = sentence_checker(beta, p.target, budget=budget)
    budget = default_budget() if budget is None else budget
    total = sum(count_structures(p.target, n) for n in range(1, size_bound + 1))
    if total > budget:
        raise BudgetExceededError(f"{total} target structures exceed the budget {budget}",
                                  estimate=total, budget=budget)
    first = None
    fp = fn = 0
    examples: dict = {}
    checked = 0
    for n in range(1, size_bound + 1):
        for B in enumerate_structures(p.target, n):
            checked += 1
            value = check(B)
            member = B in index
            if value == member:
                continue
            if value:
                fp += 1
                examples.setdefault("false_positive", B)
            else:
                fn += 1
                examples.setdefault("false_negative", B)
            if first is None:
                first = (B, value, index.get(B))
                if not exhaustive:
                    break
        if first is not None and not exhaustive:
            break
    if first is None:
        return CharacteristicReport("verified", None, None, None, (1, size_bound), checked,
                                    max_pre, 0 if exhaustive else None,
                                    0 if exhaustive else None)
    B, value, pre = first
    return CharacteristicReport(
        "refuted", B, value, pre, (1, size_bound), checked, max_pre,
        fp if exhaustive else None, fn if exhaustive else None, examples,
    )
