"""Text formats for vocabularies, structures and queries.

Grammar (EBNF)::

    document ::= { item }
    item     ::= vocab | struct | query
    vocab    ::= "vocab" NAME "{" { decl } "}"
    decl     ::= "rel" NAME "/" INT { "," NAME "/" INT } ";"
               | "const" NAME { "," NAME } ";"
    struct   ::= "struct" NAME ":" VOCAB "{" "size" "=" INT ";" { interp } "}"
    interp   ::= NAME "=" "{" [ tuple { "," tuple } ] "}" ";"   (* relation *)
               | NAME "=" INT ";"                               (* constant *)
    tuple    ::= "(" INT { "," INT } ")" | INT                  (* bare INT: unary *)
    query    ::= "query" NAME ":" VOCAB "->" VOCAB "arity" INT "{" { clause } "}"
    clause   ::= "universe" [ "(" VARS ")" ] ":" formula ";"
               | NAME "(" VARS ")" ":" formula ";"              (* target relation *)
               | NAME ":" formula ";"                           (* target constant *)

Formulas use the grammar of :mod:`fopkit.parser`. The built-in vocabularies
(``graph``, ``sgi``, ``string``, ``bits_s``, ``bits_t``) are always known;
a document may declare more. ``#`` starts a comment.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ParseError, VocabularyError
from .library import VOCABULARIES
from .parser import FormulaParser, TokenStream, parse_formula
from .query import Query, default_vars, format_query, make_query
from .structures import Structure, Vocabulary, format_structure, make_structure


@dataclass
class Document:
    vocabs: dict[str, Vocabulary] = field(default_factory=dict)
    structures: dict[str, Structure] = field(default_factory=dict)
    queries: dict[str, Query] = field(default_factory=dict)

    def only_structure(self) -> Structure:
        return _only(self.structures, "structure")

    def only_query(self) -> Query:
        return _only(self.queries, "query")


def _only(items: dict, what: str):
    if len(items) != 1:
        raise ParseError(f"expected exactly one {what}, found {len(items)}", "", 0)
    return next(iter(items.values()))


class _DocParser:
    def __init__(self, text: str, vocabs: dict | None = None):
        self.ts = TokenStream(text)
        self.vocabs = dict(VOCABULARIES)
        self.vocabs.update(vocabs or {})
        self.doc = Document()

    def parse(self) -> Document:
        ts = self.ts
        while ts.tok.kind != "eof":
            if ts.at("vocab"):
                v = self.vocab()
                self.vocabs[v.name] = v
                self.doc.vocabs[v.name] = v
            elif ts.at("struct"):
                name, A = self.struct()
                self.doc.structures[name] = A
            elif ts.at("query"):
                q = self.query()
                self.doc.queries[q.name] = q
            else:
                ts.fail(f"unexpected {ts.describe()}", ["'vocab'", "'struct'", "'query'"])
        return self.doc

    def lookup_vocab(self):
        tok = self.ts.expect_ident("vocabulary name")
        if tok.value not in self.vocabs:
            self.ts.fail(f"unknown vocabulary {tok.value!r}", tok=tok)
        return self.vocabs[tok.value]

    def vocab(self) -> Vocabulary:
        ts = self.ts
        ts.expect("vocab")
        name_tok = ts.expect_ident("vocabulary name")
        ts.expect("{")
        rels, consts = [], []
        while not ts.accept("}"):
            if ts.accept("rel"):
                while True:
                    sym = ts.expect_ident("relation symbol").value
                    ts.expect("/")
                    rels.append((sym, ts.expect_int()))
                    if not ts.accept(","):
                        break
            elif ts.accept("const"):
                consts.append(ts.expect_ident("constant symbol").value)
                while ts.accept(","):
                    consts.append(ts.expect_ident("constant symbol").value)
            else:
                ts.fail(f"unexpected {ts.describe()}", ["'rel'", "'const'", "'}'"])
            ts.expect(";")
        try:
            return Vocabulary(name_tok.value, tuple(rels), tuple(consts))
        except VocabularyError as exc:
            ts.fail(str(exc), tok=name_tok)

    def struct(self):
        ts = self.ts
        ts.expect("struct")
        name = ts.expect_ident("structure name").value
        ts.expect(":")
        vocab = self.lookup_vocab()
        ts.expect("{")
        ts.expect("size")
        ts.expect("=")
        size = ts.expect_int()
        ts.expect(";")
        rels, consts = {}, {}
        while not ts.accept("}"):
            sym_tok = ts.expect_ident("symbol")
            ts.expect("=")
            if ts.accept("{"):
                tuples = []
                if not ts.at("}"):
                    tuples.append(self.tuple_())
                    while ts.accept(","):
                        tuples.append(self.tuple_())
                ts.expect("}")
                rels[sym_tok.value] = tuples
            else:
                consts[sym_tok.value] = ts.expect_int()
            ts.expect(";")
        return name, make_structure(vocab, size, rels, consts)

    def tuple_(self):
        ts = self.ts
        if ts.accept("("):
            items = [ts.expect_int()]
            while ts.accept(","):
                items.append(ts.expect_int())
            ts.expect(")")
            return tuple(items)
        return (ts.expect_int(),)

    def formula(self, vocab, free):
        parser = FormulaParser(self.ts, vocab, allow_reserved=True, free=frozenset(free))
        result = parser.formula()
        self.ts.expect(";")
        return result

    def variables(self):
        ts = self.ts
        ts.expect("(")
        names = [ts.expect_ident("variable").value]
        while ts.accept(","):
            names.append(ts.expect_ident("variable").value)
        ts.expect(")")
        return tuple(names)

    def query(self) -> Query:
        ts = self.ts
        start = ts.expect("query")
        name = ts.expect_ident("query name").value
        ts.expect(":")
        source = self.lookup_vocab()
        ts.expect("->")
        target = self.lookup_vocab()
        ts.expect("arity")
        arity = ts.expect_int()
        ts.expect("{")
        uvars = default_vars(arity)
        universe = None
        relations, constants = {}, {}
        while not ts.accept("}"):
            tok = ts.expect_ident("clause")
            if tok.value == "universe":
                if ts.at("("):
                    uvars = self.variables()
                ts.expect(":")
                universe = self.formula(source, uvars)
            elif ts.at("("):
                variables = self.variables()
                ts.expect(":")
                relations[tok.value] = (variables, self.formula(source, variables))
            else:
                ts.expect(":")
                constants[tok.value] = self.formula(source, uvars)
        if universe is None:
            ts.fail("query needs a universe clause", tok=start)
        try:
            return make_query(name, source, target, arity, universe, relations,
                              constants, universe_vars=uvars)
        except Exception as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"query {name}: {exc}", ts.text, start.pos) from exc


def parse_document(text: str, vocabs: dict | None = None) -> Document:
    """Parse any mix of ``vocab``, ``struct`` and ``query`` items."""
    return _DocParser(text, vocabs).parse()


def parse_structure(text: str, vocabs: dict | None = None) -> Structure:
    return parse_document(text, vocabs).only_structure()


def parse_query(text: str, vocabs: dict | None = None) -> Query:
    return parse_document(text, vocabs).only_query()


def format_vocabulary(vocab: Vocabulary) -> str:
    parts = []
    if vocab.relations:
        parts.append("rel " + ", ".join(f"{r}/{a}" for r, a in vocab.relations) + ";")
    if vocab.constants:
        parts.append("const " + ", ".join(vocab.constants) + ";")
    return f"vocab {vocab.name} {{ " + " ".join(parts) + " }"


def format_document(structures=(), queries=(), vocabs=()) -> str:
    blocks = [format_vocabulary(v) for v in vocabs]
    for i, A in enumerate(structures):
        blocks.append(format_structure(A, "A" if len(structures) == 1 else f"A{i}"))
    blocks += [format_query(q) for q in queries]
    return "\n".join(blocks) + "\n"


def parse_formula_text(text: str, vocab: Vocabulary, *, sentence: bool = True):
    """Formula files hold one formula; generated ``_`` names are allowed."""
    return parse_formula(text, vocab, sentence=sentence, allow_reserved=True)


__all__ = [
    "Document", "parse_document", "parse_structure", "parse_query", "parse_formula_text",
    "format_vocabulary", "format_document", "format_structure", "format_query",
]
