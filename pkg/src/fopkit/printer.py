"""Render formulas in the concrete syntax accepted by :mod:`fopkit.parser`.

Parentheses are inserted only where the grammar needs them, so
``parse_formula(print_formula(phi))`` reproduces ``phi`` node for node.
"""

from __future__ import annotations

from . import syntax as s

_IMPLIES, _OR, _AND, _NOT, _ATOM = 1, 2, 3, 4, 5


def print_term(term) -> str:
    if isinstance(term, (s.Var, s.Const)):
        return term.name
    if isinstance(term, s.Zero):
        return "0"
    if isinstance(term, s.Max):
        return "max"
    if isinstance(term, s.FunApp):
        return f"{term.fun}({print_term(term.arg)})"
    raise TypeError(f"not a term: {term!r}")


def _render(f) -> tuple[str, int]:
    if isinstance(f, s.Bool):
        return ("true" if f.value else "false"), _ATOM
    if isinstance(f, s.Atom):
        return f"{f.pred}({', '.join(print_term(t) for t in f.args)})", _ATOM
    if isinstance(f, (s.Bit, s.Suc)):
        return f"{f.symbol}({print_term(f.left)}, {print_term(f.right)})", _ATOM
    if isinstance(f, s.NumAtom):
        return f"{print_term(f.left)} {f.symbol} {print_term(f.right)}", _ATOM
    if isinstance(f, s.Not):
        if isinstance(f.body, s.Eq):
            return f"{print_term(f.body.left)} != {print_term(f.body.right)}", _ATOM
        return "!" + _wrap(f.body, _NOT), _NOT
    if isinstance(f, s.And):
        return f"{_wrap(f.left, _AND)} & {_wrap(f.right, _NOT)}", _AND
    if isinstance(f, s.Or):
        return f"{_wrap(f.left, _OR)} | {_wrap(f.right, _AND)}", _OR
    if isinstance(f, s.Implies):
        return f"{_wrap(f.left, _OR)} -> {_wrap(f.right, _IMPLIES)}", _IMPLIES
    if isinstance(f, s.Forall):
        return f"all {f.var}. {_wrap(f.body, 0)}", 0
    if isinstance(f, s.Exists):
        return f"ex {f.var}. {_wrap(f.body, 0)}", 0
    if isinstance(f, s.SOExists):
        return f"EX2 {f.name}/{f.arity}. {_wrap(f.body, 0)}", 0
    if isinstance(f, s.SOForall):
        return f"ALL2 {f.name}/{f.arity}. {_wrap(f.body, 0)}", 0
    if isinstance(f, s.FunExists):
        kw = "EXINJ" if f.injective else "EXFUN"
        return f"{kw} {f.name}. {_wrap(f.body, 0)}", 0
    raise TypeError(f"not a formula: {f!r}")


def _wrap(f, context: int) -> str:
    text, prec = _render(f)
    return f"({text})" if prec < context else text


def print_formula(formula) -> str:
    return _render(formula)[0]
