"""Concrete syntax for formulas.

Grammar (EBNF)::

    formula  ::= disj [ "->" formula ]                 (* right associative *)
    disj     ::= conj { "|" conj }
    conj     ::= unary { "&" unary }
    unary    ::= "!" unary | quant | primary
    quant    ::= ("all" | "ex") VAR { "," VAR } "." formula
               | ("EX2" | "ALL2") NAME "/" INT "." formula
               | ("EXINJ" | "EXFUN") NAME "." formula
    primary  ::= "true" | "false" | "(" formula ")"
               | ("BIT" | "suc") "(" term "," term ")"
               | NAME "(" term { "," term } ")"        (* relation / SO variable *)
               | term ("=" | "!=" | "<=" | "<") term
    term     ::= VAR | CONST | "0" | "max" | NAME "(" term ")"

Quantifier bodies extend as far right as possible. Identifiers starting with
``_`` are reserved for generated variables and rejected unless
``allow_reserved`` is set.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import syntax as s
from .errors import ArityMismatchError, ParseError, UnboundVariableError, UnknownSymbolError
from .structures import RESERVED, Vocabulary

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<int>[0-9]+)
  | (?P<sym>->|!=|<=|[()\[\],./!&|=<;:{}])
    """,
    re.VERBOSE,
)

QUANTIFIER_KEYWORDS = {"all", "ex", "EX2", "ALL2", "EXINJ", "EXFUN"}


@dataclass(frozen=True)
class Token:
    kind: str  # ident | int | sym | eof
    value: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        if m.lastgroup != "ws":
            tokens.append(Token(m.lastgroup, m.group(), pos))
        pos = m.end()
    tokens.append(Token("eof", "", len(text)))
    return tokens


class TokenStream:
    """Cursor over tokens with error reporting against the source text."""

    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, offset=1) -> Token:
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def at(self, value: str) -> bool:
        return self.tok.kind in ("sym", "ident") and self.tok.value == value

    def advance(self) -> Token:
        tok = self.tok
        self.i += 1
        return tok

    def accept(self, value: str) -> bool:
        if self.at(value):
            self.i += 1
            return True
        return False

    def expect(self, value: str) -> Token:
        if not self.at(value):
            self.fail(f"unexpected {self.describe()}", [repr(value)])
        return self.advance()

    def expect_ident(self, what="identifier") -> Token:
        if self.tok.kind != "ident":
            self.fail(f"unexpected {self.describe()}", [what])
        return self.advance()

    def expect_int(self) -> int:
        if self.tok.kind != "int":
            self.fail(f"unexpected {self.describe()}", ["integer"])
        return int(self.advance().value)

    def describe(self, tok: Token | None = None) -> str:
        tok = tok or self.tok
        return "end of input" if tok.kind == "eof" else repr(tok.value)

    def fail(self, message, expected=(), tok: Token | None = None):
        tok = tok or self.tok
        raise ParseError(message, self.text, tok.pos, expected)

    def where(self, tok: Token) -> str:
        line = self.text.count("\n", 0, tok.pos) + 1
        col = tok.pos - (self.text.rfind("\n", 0, tok.pos) + 1) + 1
        return f"line {line}, column {col}"


class FormulaParser:
    """Recursive-descent parser resolving symbols against a vocabulary."""

    def __init__(self, stream: TokenStream, vocab: Vocabulary, allow_reserved=False,
                 free: frozenset | None = None):
        self.ts = stream
        self.vocab = vocab
        self.allow_reserved = allow_reserved
        self.free_allowed = free
        self.bound: list[str] = []
        self.so: dict[str, int] = {}
        self.so_stack: list[tuple[str, int | None]] = []
        self.funs: list[str] = []
        self.free_seen: dict[str, Token] = {}

    # -- helpers --
    def _name(self, tok: Token) -> str:
        name = tok.value
        if name.startswith("_") and not self.allow_reserved:
            self.ts.fail(f"identifier {name!r} is in the reserved namespace", tok=tok)
        return name

    def _check_binder_name(self, tok: Token, kind: str):
        name = self._name(tok)
        if name in RESERVED:
            self.ts.fail(f"{name!r} is reserved and cannot be bound", tok=tok)
        if self.vocab.arity(name) is not None or self.vocab.has_constant(name):
            self.ts.fail(f"{kind} {name!r} clashes with a vocabulary symbol", tok=tok)
        return name

    # -- grammar --
    def formula(self):
        left = self.disj()
        if self.ts.accept("->"):
            return s.Implies(left, self.formula())
        return left

    def disj(self):
        node = self.conj()
        while self.ts.accept("|"):
            node = s.Or(node, self.conj())
        return node

    def conj(self):
        node = self.unary()
        while self.ts.accept("&"):
            node = s.And(node, self.unary())
        return node

    def unary(self):
        if self.ts.accept("!"):
            return s.Not(self.unary())
        if self.ts.tok.kind == "ident" and self.ts.tok.value in QUANTIFIER_KEYWORDS:
            return self.quantifier()
        return self.primary()

    def quantifier(self):
        kw = self.ts.advance().value
        if kw in ("all", "ex"):
            names = [self._check_binder_name(self.ts.expect_ident("variable"), "variable")]
            while self.ts.accept(","):
                names.append(self._check_binder_name(self.ts.expect_ident("variable"), "variable"))
            self.ts.expect(".")
            self.bound.extend(names)
            body = self.formula()
            del self.bound[-len(names):]
            node = s.Forall if kw == "all" else s.Exists
            for name in reversed(names):
                body = node(name, body)
            return body
        name_tok = self.ts.expect_ident("second-order variable")
        name = self._check_binder_name(name_tok, "second-order variable")
        if kw in ("EX2", "ALL2"):
            self.ts.expect("/")
            arity_tok = self.ts.tok
            arity = self.ts.expect_int()
            if arity < 1:
                self.ts.fail("second-order arity must be positive", tok=arity_tok)
            self.ts.expect(".")
            self.so_stack.append((name, self.so.get(name)))
            self.so[name] = arity
            body = self.formula()
            self._pop_so()
            node = s.SOExists if kw == "EX2" else s.SOForall
            return node(name, arity, body)
        self.ts.expect(".")
        self.funs.append(name)
        self.so_stack.append((name, self.so.pop(name, None)))
        body = self.formula()
        self.funs.pop()
        self._pop_so()
        return s.FunExists(name, kw == "EXINJ", body)

    def _pop_so(self):
        name, previous = self.so_stack.pop()
        if previous is None:
            self.so.pop(name, None)
        else:
            self.so[name] = previous

    def primary(self):
        ts = self.ts
        tok = ts.tok
        if ts.accept("true"):
            return s.TRUE
        if ts.accept("false"):
            return s.FALSE
        if ts.accept("("):
            inner = self.formula()
            ts.expect(")")
            return inner
        if tok.kind == "ident" and tok.value in ("BIT", "suc") and ts.peek().value == "(":
            ts.advance()
            ts.expect("(")
            left = self.term()
            ts.expect(",")
            right = self.term()
            ts.expect(")")
            return (s.Bit if tok.value == "BIT" else s.Suc)(left, right)
        if tok.kind == "ident" and ts.peek().value == "(" and tok.value not in self.funs:
            return self.relational_atom()
        left = self.term()
        op_tok = ts.tok
        for op, node in (("=", s.Eq), ("<=", s.Le), ("<", s.Lt)):
            if ts.accept(op):
                return node(left, self.term())
        if ts.accept("!="):
            return s.neq(left, self.term())
        ts.fail(f"unexpected {ts.describe(op_tok)}", ["'='", "'!='", "'<='", "'<'"], tok=op_tok)

    def relational_atom(self):
        ts = self.ts
        tok = ts.advance()
        name = self._name(tok)
        if name in self.so:
            arity = self.so[name]
        elif self.vocab.arity(name) is not None:
            arity = self.vocab.arity(name)
        else:
            raise UnknownSymbolError(f"unknown relation symbol {name!r} at {ts.where(tok)}")
        ts.expect("(")
        args = [self.term()]
        while ts.accept(","):
            args.append(self.term())
        ts.expect(")")
        if len(args) != arity:
            raise ArityMismatchError(
                f"{name} expects {arity} argument(s), got {len(args)} at {ts.where(tok)}"
            )
        return s.Atom(name, tuple(args))

    def term(self):
        ts = self.ts
        tok = ts.tok
        if tok.kind == "int":
            if tok.value != "0":
                ts.fail(f"numeral {tok.value} is not a term", ["'0'", "'max'", "variable"])
            ts.advance()
            return s.Zero()
        if tok.kind != "ident":
            ts.fail(f"unexpected {ts.describe()}", ["term"])
        if tok.value == "max":
            ts.advance()
            return s.Max()
        if tok.value in RESERVED:
            ts.fail(f"unexpected keyword {tok.value!r}", ["term"])
        name = self._name(tok)
        ts.advance()
        if ts.at("("):
            if name not in self.funs:
                if name in self.so or self.vocab.arity(name) is not None:
                    ts.fail(f"relation {name!r} used as a term", tok=tok)
                raise UnknownSymbolError(f"unknown function symbol {name!r} at {ts.where(tok)}")
            ts.advance()
            arg = self.term()
            if isinstance(arg, s.FunApp):
                ts.fail("nested function application is not supported", tok=tok)
            ts.expect(")")
            return s.FunApp(name, arg)
        if name in self.bound:
            return s.Var(name)
        if self.vocab.has_constant(name):
            return s.Const(name)
        if name in self.so or name in self.funs or self.vocab.arity(name) is not None:
            ts.fail(f"{name!r} is not a first-order term", tok=tok)
        if self.free_allowed is not None and name not in self.free_allowed:
            raise UnboundVariableError(f"variable {name!r} is not bound at {ts.where(tok)}")
        self.free_seen.setdefault(name, tok)
        return s.Var(name)


def parse_formula(text: str, vocab: Vocabulary, *, sentence=False, free=None,
                  allow_reserved=False):
    """Parse ``text`` into a formula over ``vocab``.

    ``sentence=True`` rejects free variables; ``free`` restricts them to the
    given names.
    """
    if sentence:
        free = frozenset()
    ts = TokenStream(text)
    parser = FormulaParser(ts, vocab, allow_reserved=allow_reserved,
                           free=None if free is None else frozenset(free))
    result = parser.formula()
    if ts.tok.kind != "eof":
        ts.fail(f"unexpected {ts.describe()}", ["'&'", "'|'", "'->'", "end of input"])
    return result


def parse_sentence(text: str, vocab: Vocabulary, **kwargs):
    return parse_formula(text, vocab, sentence=True, **kwargs)
