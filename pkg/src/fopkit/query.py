"""First-order queries and projections.

A query of arity ``k`` from ``source`` to ``target`` maps a structure ``A``
to the structure whose universe is the set of ``k``-tuples satisfying the
universe formula, renumbered ``0..m-1`` in lexicographic order. Relation
formulas carry ``k * arity`` variables; each target constant names a tuple
of source constants.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from . import syntax as s
from .errors import (
    BudgetExceededError,
    ConstantUndefinedError,
    EmptyImageUniverseError,
    QueryError,
)
from .evaluate import compile_filter, default_budget, interpret
from .printer import print_formula
from .structures import (
    Structure,
    Vocabulary,
    count_structures,
    enumerate_structures,
    make_structure,
    tuples_of,
)
from .transform import free_predicates, free_variables, is_guard, is_numerical


@dataclass(frozen=True)
class Query:
    name: str
    source: Vocabulary
    target: Vocabulary
    arity: int
    universe_vars: tuple[str, ...]
    universe: object
    # (symbol, variables, formula) in target declaration order
    relations: tuple[tuple[str, tuple[str, ...], object], ...]
    # (symbol, tuple of source constant names) in target declaration order
    constants: tuple[tuple[str, tuple[str, ...]], ...] = ()

    def relation_formula(self, symbol: str):
        for sym, variables, formula in self.relations:
            if sym == symbol:
                return variables, formula
        raise KeyError(symbol)

    def constant_tuple(self, symbol: str) -> tuple[str, ...]:
        return dict(self.constants)[symbol]

    def constant_formula(self, symbol: str):
        names = self.constant_tuple(symbol)
        return s.conj(*(s.Eq(s.Var(v), s.Const(c)) for v, c in zip(self.universe_vars, names)))

    def __str__(self):
        return format_query(self)


def default_vars(k: int) -> tuple[str, ...]:
    return tuple(f"x{i}" for i in range(1, k + 1))


def _constant_tuple(formula, variables, source: Vocabulary, symbol: str) -> tuple[str, ...]:
    """Read ``x1 = c1 & ... & xk = ck`` (any order) into ``(c1, ..., ck)``."""
    found: dict[str, str] = {}
    for part in s.flatten(formula, s.And):
        if not isinstance(part, s.Eq):
            raise QueryError(f"constant {symbol}: {print_formula(part)} is not an equality")
        left, right = part.left, part.right
        if isinstance(left, s.Const) and isinstance(right, s.Var):
            left, right = right, left
        if not (isinstance(left, s.Var) and isinstance(right, s.Const)):
            raise QueryError(
                f"constant {symbol}: {print_formula(part)} must equate a variable with a constant"
            )
        if left.name not in variables or left.name in found:
            raise QueryError(f"constant {symbol}: variable {left.name} misused")
        if not source.has_constant(right.name):
            raise QueryError(f"constant {symbol}: {right.name} is not a source constant")
        found[left.name] = right.name
    if set(found) != set(variables):
        raise QueryError(f"constant {symbol}: every one of {', '.join(variables)} needs a value")
    return tuple(found[v] for v in variables)


def make_query(
    name: str,
    source: Vocabulary,
    target: Vocabulary,
    arity: int,
    universe=s.TRUE,
    relations: dict | None = None,
    constants: dict | None = None,
    universe_vars: Iterable[str] | None = None,
) -> Query:
    """Validate components and build a :class:`Query`.

    ``relations`` maps each target relation to ``(variables, formula)``.
    ``constants`` maps each target constant to either a tuple of source
    constant names or a formula ``x1 = c1 & ... & xk = ck``.
    """
    if arity < 1:
        raise QueryError(f"query arity must be at least 1, got {arity}")
    uvars = tuple(universe_vars) if universe_vars is not None else default_vars(arity)
    if len(uvars) != arity or len(set(uvars)) != arity:
        raise QueryError(f"universe formula needs {arity} distinct variables")
    _check_component("universe", universe, uvars, source)
    relations = dict(relations or {})
    constants = dict(constants or {})
    extra = set(relations) - set(target.relation_names)
    if extra:
        raise QueryError(f"{', '.join(sorted(extra))} not relations of {target.name}")
    rels = []
    for sym, a in target.relations:
        if sym not in relations:
            raise QueryError(f"no formula for target relation {sym}")
        variables, formula = relations[sym]
        variables = tuple(variables)
        if len(variables) != arity * a or len(set(variables)) != len(variables):
            raise QueryError(f"{sym} needs {arity * a} distinct variables, got {variables}")
        _check_component(sym, formula, variables, source)
        rels.append((sym, variables, formula))
    extra = set(constants) - set(target.constants)
    if extra:
        raise QueryError(f"{', '.join(sorted(extra))} not constants of {target.name}")
    consts = []
    for sym in target.constants:
        if sym not in constants:
            raise QueryError(f"no tuple for target constant {sym}")
        value = constants[sym]
        if isinstance(value, (tuple, list)):
            names = tuple(value)
            if len(names) != arity or not all(source.has_constant(c) for c in names):
                raise QueryError(f"constant {sym}: need {arity} source constants, got {names}")
        else:
            names = _constant_tuple(value, uvars, source, sym)
        consts.append((sym, names))
    return Query(name, source, target, arity, uvars, universe, tuple(rels), tuple(consts))


def _check_component(label, formula, variables, source: Vocabulary):
    extra = free_variables(formula) - set(variables)
    if extra:
        raise QueryError(f"{label}: free variable(s) {', '.join(sorted(extra))} not in {variables}")
    unknown = {p for p in free_predicates(formula) if source.arity(p) is None}
    if unknown:
        raise QueryError(f"{label}: {', '.join(sorted(unknown))} not relations of {source.name}")
    for node in s.subformulas(formula):
        if isinstance(node, (s.SOExists, s.SOForall, s.FunExists)):
            raise QueryError(f"{label}: query components must be first-order")


def identity_query(vocab: Vocabulary, name: str = "id") -> Query:
    rels = {}
    for sym, a in vocab.relations:
        variables = default_vars(a)
        rels[sym] = (variables, s.Atom(sym, tuple(s.Var(v) for v in variables)))
    consts = {c: (c,) for c in vocab.constants}
    return make_query(name, vocab, vocab, 1, s.TRUE, rels, consts)


# -- application ------------------------------------------------------------

def image_universe(query: Query, structure: Structure) -> list[tuple[int, ...]]:
    return compile_filter(query.universe, query.source, query.universe_vars)(structure)


def apply_query(query: Query, structure: Structure) -> Structure:
    """``I(A)``: the target structure defined by ``query`` on ``structure``."""
    if structure.vocab != query.source:
        raise QueryError(f"{query.name} expects a {query.source.name} structure")
    universe = image_universe(query, structure)
    if not universe:
        raise EmptyImageUniverseError(f"{query.name}: no tuple satisfies the universe formula")
    rank = {t: i for i, t in enumerate(universe)}
    k = query.arity
    relations = []
    for sym, variables, formula in query.relations:
        rows = compile_filter(formula, query.source, variables)(structure)
        out = set()
        for row in rows:
            blocks = [row[j : j + k] for j in range(0, len(row), k)]
            if all(b in rank for b in blocks):
                out.add(tuple(rank[b] for b in blocks))
        relations.append(frozenset(out))
    constants = []
    for sym, names in query.constants:
        point = tuple(structure.constant(c) for c in names)
        if point not in rank:
            raise ConstantUndefinedError(
                f"{query.name}: tuple {point} for constant {sym} fails the universe formula"
            )
        constants.append(rank[point])
    return Structure(query.target, len(universe), tuple(relations), tuple(constants))


def try_apply(query: Query, structure: Structure) -> Structure | None:
    """``apply_query`` or ``None`` when the image is undefined."""
    try:
        return apply_query(query, structure)
    except (EmptyImageUniverseError, ConstantUndefinedError):
        return None


# -- projection form --------------------------------------------------------

@dataclass(frozen=True)
class Guarded:
    """One disjunct: a guard with an optional literal."""

    guard: object
    literal: object | None


@dataclass
class FopVerdict:
    ok: bool
    reason: str | None = None
    forms: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok


def _is_literal(f, source: Vocabulary) -> bool:
    body = f.body if isinstance(f, s.Not) else f
    return isinstance(body, s.Atom) and source.arity(body.pred) is not None


def guarded_form(formula, source: Vocabulary) -> list[Guarded] | str:
    """Split ``formula`` into guarded disjuncts, or return a diagnosis."""
    out = []
    for disjunct in s.flatten(formula, s.Or):
        guards, literals = [], []
        for part in s.flatten(disjunct, s.And):
            if is_guard(part):
                guards.append(part)
            elif _is_literal(part, source):
                literals.append(part)
            else:
                return f"{print_formula(part)} is neither a guard nor a literal"
        if len(literals) > 1:
            return (f"disjunct {print_formula(disjunct)} has {len(literals)} literals; "
                    "a projection allows one")
        out.append(Guarded(s.conj(*guards), literals[0] if literals else None))
    return out


def _guards_exclusive(query: Query, variables, forms, size_bound):
    """First witness that two guards hold together, or ``None``."""
    if len(forms) < 2:
        return None
    consts = sorted({t.name for g in forms for n in s.subformulas(g.guard)
                     for t in s.atom_terms(n) if isinstance(t, s.Const)})
    empty = {sym: () for sym in query.source.relation_names}
    for n in range(1, size_bound + 1):
        for cvals in tuples_of(n, len(consts)):
            base = dict.fromkeys(query.source.constants, 0)
            base.update(zip(consts, cvals))
            A = make_structure(query.source, n, empty, base)
            for point in tuples_of(n, len(variables)):
                env = dict(zip(variables, point))
                hits = [i for i, g in enumerate(forms) if interpret(A, g.guard, env)]
                if len(hits) > 1:
                    return n, point, dict(zip(consts, cvals)), hits
    return None


def is_fop(query: Query, size_bound: int = 4) -> FopVerdict:
    """Check the projection shape.

    The universe formula must be numerical; each relation formula must be a
    disjunction of guarded literals whose guards are pairwise exclusive on
    every universe size up to ``size_bound``. Guards may mention source
    constants; exclusivity is then checked for every constant value.
    """
    if not is_numerical(query.universe):
        return FopVerdict(False, f"universe formula {print_formula(query.universe)} is not numerical")
    forms = {}
    for sym, variables, formula in query.relations:
        form = guarded_form(formula, query.source)
        if isinstance(form, str):
            return FopVerdict(False, f"{sym}: {form}")
        clash = _guards_exclusive(query, variables, form, size_bound)
        if clash is not None:
            n, point, cvals, hits = clash
            return FopVerdict(
                False,
                f"{sym}: guards {hits} overlap at size {n} on {point}"
                + (f" with constants {cvals}" if cvals else ""),
            )
        forms[sym] = form
    return FopVerdict(True, None, forms)


def apply_projection(query: Query, structure: Structure, verdict: FopVerdict | None = None):
    """Apply a projection through its guard/literal decomposition.

    This path uses the reference interpreter for guards and reads each
    literal directly; it must agree with :func:`apply_query`.
    """
    verdict = verdict or is_fop(query, size_bound=1)
    if not verdict.ok:
        raise QueryError(f"{query.name} is not a projection: {verdict.reason}")
    n = structure.size
    k = query.arity
    universe = [t for t in tuples_of(n, k)
                if interpret(structure, query.universe, dict(zip(query.universe_vars, t)))]
    if not universe:
        raise EmptyImageUniverseError(f"{query.name}: no tuple satisfies the universe formula")
    rank = {t: i for i, t in enumerate(universe)}
    relations = []
    for (sym, a), (_, variables, _) in zip(query.target.relations, query.relations):
        out = set()
        for blocks in tuples_of(len(universe), a):
            row = sum((universe[b] for b in blocks), ())
            env = dict(zip(variables, row))
            for g in verdict.forms[sym]:
                if interpret(structure, g.guard, env) and (
                    g.literal is None or interpret(structure, g.literal, env)
                ):
                    out.add(blocks)
                    break
        relations.append(frozenset(out))
    constants = []
    for sym, names in query.constants:
        point = tuple(structure.constant(c) for c in names)
        if point not in rank:
            raise ConstantUndefinedError(f"{query.name}: constant {sym} undefined")
        constants.append(rank[point])
    return Structure(query.target, len(universe), tuple(relations), tuple(constants))


# -- injectivity ------------------------------------------------------------

@dataclass
class InjectivityReport:
    injective: bool
    counterexample: tuple[Structure, Structure] | None
    checked: int
    sizes: tuple[int, int]

    def __bool__(self):
        return self.injective


def check_injective(query: Query, size_bound: int, min_size: int = 1,
                    budget: int | None = None) -> InjectivityReport:
    """Compare outputs over every pair of source structures with sizes in
    ``[min_size, size_bound]``; report two distinct inputs with equal output.

    Inputs whose image is undefined are skipped.
    """
    budget = default_budget() if budget is None else budget
    total = sum(count_structures(query.source, n) for n in range(min_size, size_bound + 1))
    if total > budget:
        raise BudgetExceededError(
            f"{total} source structures exceed the budget {budget}", estimate=total, budget=budget
        )
    seen: dict[Structure, Structure] = {}
    checked = 0
    for n in range(min_size, size_bound + 1):
        for A in enumerate_structures(query.source, n):
            B = try_apply(query, A)
            if B is None:
                continue
            checked += 1
            if B in seen:
                return InjectivityReport(False, (seen[B], A), checked, (min_size, size_bound))
            seen[B] = A
    return InjectivityReport(True, None, checked, (min_size, size_bound))


def format_query(query: Query) -> str:
    """Render in the ``query NAME : SRC -> DST arity K { ... }`` text format."""
    parts = []
    default = default_vars(query.arity)
    if query.universe_vars == default:
        parts.append(f"universe: {print_formula(query.universe)};")
    else:
        parts.append(f"universe({', '.join(query.universe_vars)}): {print_formula(query.universe)};")
    for sym, variables, formula in query.relations:
        parts.append(f"{sym}({', '.join(variables)}): {print_formula(formula)};")
    for sym, names in query.constants:
        parts.append(f"{sym}: {print_formula(query.constant_formula(sym))};")
    body = "\n  ".join(parts)
    return (f"query {query.name} : {query.source.name} -> {query.target.name} "
            f"arity {query.arity} {{\n  {body}\n}}")
