"""Formula and term AST.

Nodes are frozen dataclasses, so ``==`` is structural equality and formulas
can key caches. Binary connectives are binary nodes; use :func:`conj` and
:func:`disj` to fold longer lists left-associatively (the parser does the
same).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Union


# -- terms ------------------------------------------------------------------

@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    """A vocabulary constant symbol."""

    name: str


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class Max:
    pass


@dataclass(frozen=True)
class FunApp:
    """``f(t)``: sugar for the unique ``y`` with ``f(t, y)``."""

    fun: str
    arg: "Term"


Term = Union[Var, Const, Zero, Max, FunApp]


# -- formulas ---------------------------------------------------------------

@dataclass(frozen=True)
class Bool:
    value: bool


TRUE = Bool(True)
FALSE = Bool(False)


@dataclass(frozen=True)
class Atom:
    """``R(t1, ..., ta)`` for a vocabulary relation or a second-order variable."""

    pred: str
    args: tuple

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))


@dataclass(frozen=True)
class NumAtom:
    left: Term
    right: Term
    symbol = "?"


@dataclass(frozen=True)
class Eq(NumAtom):
    symbol = "="


@dataclass(frozen=True)
class Le(NumAtom):
    symbol = "<="


@dataclass(frozen=True)
class Lt(NumAtom):
    symbol = "<"


@dataclass(frozen=True)
class Bit(NumAtom):
    """``BIT(i, j)``: bit ``j`` of ``i`` is 1, bit 0 least significant."""

    symbol = "BIT"


@dataclass(frozen=True)
class Suc(NumAtom):
    symbol = "suc"


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class SOExists:
    name: str
    arity: int
    body: "Formula"


@dataclass(frozen=True)
class SOForall:
    name: str
    arity: int
    body: "Formula"


@dataclass(frozen=True)
class FunExists:
    """Function-style binder ``EXINJ f.`` (injective) or ``EXFUN f.``."""

    name: str
    injective: bool
    body: "Formula"


Formula = Union[
    Bool, Atom, Eq, Le, Lt, Bit, Suc, Not, And, Or, Implies,
    Forall, Exists, SOExists, SOForall, FunExists,
]

BINARY = (And, Or, Implies)
FO_QUANT = (Forall, Exists)
SO_QUANT = (SOExists, SOForall)
NUMERIC_ATOMS = (Eq, Le, Lt, Bit, Suc)


def conj(*formulas):
    if not formulas:
        return TRUE
    return reduce(And, formulas)


def disj(*formulas):
    if not formulas:
        return FALSE
    return reduce(Or, formulas)


def flatten(formula, kind) -> list:
    """Operands of a nested ``And``/``Or`` chain, left to right."""
    if isinstance(formula, kind):
        return flatten(formula.left, kind) + flatten(formula.right, kind)
    return [formula]


def forall(names, body):
    for name in reversed(list(names)):
        body = Forall(name, body)
    return body


def exists(names, body):
    for name in reversed(list(names)):
        body = Exists(name, body)
    return body


def neq(left, right):
    return Not(Eq(left, right))


def children(formula) -> tuple:
    if isinstance(formula, BINARY):
        return (formula.left, formula.right)
    if isinstance(formula, (Not, Forall, Exists, SOExists, SOForall, FunExists)):
        return (formula.body,)
    return ()


def term_children(term) -> tuple:
    return (term.arg,) if isinstance(term, FunApp) else ()


def atom_terms(formula) -> tuple:
    if isinstance(formula, Atom):
        return formula.args
    if isinstance(formula, NumAtom):
        return (formula.left, formula.right)
    return ()


def subformulas(formula):
    """Pre-order traversal."""
    stack = [formula]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(children(node)))


def depth(formula) -> int:
    kids = children(formula)
    return 1 + max((depth(k) for k in kids), default=0)
