"""``fopkit`` command line.

Exit codes: 0 verified / true, 1 counterexample / false, 2 error.
"""

from __future__ import annotations

import functools
import sys
import time
from pathlib import Path

import click

from .canonical import (
    CASES,
    decomposition_case,
    verify_condition_c,
    verify_decomposition,
    verify_reduction,
)
from .dual import image_membership, semantic_dual_eval, syntactic_dual, verify_characteristic
from .errors import BudgetExceededError, FopkitError, UnknownNameError
from .evaluate import default_budget, eval_so, find_witness, sentence_checker
from .library import ALIASES, CONVENTIONS, SENTENCE_VOCABS, builtin, builtin_names, set_convention
from .printer import print_formula
from .problems import Problem
from .query import Query, apply_query, check_injective, try_apply
from .report import Counterexample, Report, error_report
from .structures import (
    STRING,
    Structure,
    Vocabulary,
    count_structures,
    enumerate_structures,
    format_structure,
    string_to_structure,
    structure_to_string,
)
from .textformat import format_document, parse_document, parse_formula_text, parse_query
from .transform import simplify


# -- input resolution --------------------------------------------------------

def _is_string_vocab(vocab: Vocabulary) -> bool:
    return len(vocab.relations) == 1 and vocab.relations[0][1] == 1 and not vocab.constants


def _default_max_size(vocab: Vocabulary) -> int:
    return 6 if _is_string_vocab(vocab) else 3


def _largest_fitting(vocab: Vocabulary, budget: int) -> int:
    total, m = 0, 0
    while True:
        total += count_structures(vocab, m + 1)
        if total > budget:
            return m
        m += 1


def load_query(ref: str) -> Query:
    path = Path(ref)
    if path.is_file():
        return parse_query(path.read_text())
    obj = builtin(ref)
    if not isinstance(obj, Query):
        raise UnknownNameError(f"{ref!r} is not a query")
    return obj


def load_problem(name: str) -> Problem:
    obj = builtin(name)
    if not isinstance(obj, Problem):
        raise UnknownNameError(f"{name!r} is not a problem")
    return obj


def load_sentence(name: str | None, path: str | None, text: str | None, vocab: Vocabulary | None):
    """A sentence from a built-in name (problem or sentence), a file, or inline text."""
    given = [x for x in (name, path, text) if x is not None]
    if len(given) != 1:
        raise click.UsageError("give exactly one of --builtin, --formula, --text")
    if name is not None:
        obj = builtin(name)
        if isinstance(obj, Problem):
            return obj.sentence, obj.vocab
        if isinstance(obj, Query):
            raise UnknownNameError(f"{name!r} is a query, not a sentence")
        return obj, SENTENCE_VOCABS[ALIASES.get(name, name)]
    if vocab is None:
        raise click.UsageError("cannot tell the formula's vocabulary; give a structure first")
    source = Path(path).read_text() if path is not None else text
    return parse_formula_text(source, vocab), vocab


def load_structure(path: str | None, word: str | None, vocab: Vocabulary | None) -> Structure:
    if (path is None) == (word is None):
        raise click.UsageError("give exactly one of --struct, --string")
    if word is not None:
        target = vocab if vocab is not None and _is_string_vocab(vocab) else STRING
        return string_to_structure(word, target)
    return parse_document(Path(path).read_text()).only_structure()


def show_structure(A: Structure, as_string: bool) -> str:
    if as_string and _is_string_vocab(A.vocab):
        return structure_to_string(A)
    return format_structure(A, "A")


# -- plumbing ----------------------------------------------------------------

def _emit(report: Report, as_json: bool):
    if as_json:
        click.echo(report.dumps())
    else:
        text = report.render()
        if text:
            click.echo(text, err=report.verdict == "error")
    sys.exit(report.exit_code)


def command(name: str, vocab_for_budget=None):
    """Wrap a report-producing command with ``--json`` and error handling."""
    def deco(fn):
        @click.option("--json", "as_json", is_flag=True, help="Emit a JSON report.")
        @functools.wraps(fn)
        def wrapper(as_json, **kwargs):
            started = time.perf_counter()
            try:
                report = fn(**kwargs)
                if not report.seconds:
                    report.seconds = time.perf_counter() - started
            except BudgetExceededError as exc:
                extra = {}
                vocab = None
                if vocab_for_budget is not None:
                    try:
                        vocab = vocab_for_budget(**kwargs)
                    except FopkitError:
                        vocab = None
                if vocab is not None:
                    m = _largest_fitting(vocab, exc.budget or default_budget())
                    if m >= 1:
                        extra["suggested_max_size"] = m
                report = error_report(name, exc, **extra)
            except FopkitError as exc:
                report = error_report(name, exc)
            except OSError as exc:
                report = error_report(name, exc)
            _emit(report, as_json)
        return wrapper
    return deco


def _formula_options(fn):
    fn = click.option("--text", "text", help="Inline formula.")(fn)
    fn = click.option("--formula", "formula_path", type=click.Path(exists=True, dir_okay=False),
                      help="File holding one formula.")(fn)
    fn = click.option("--builtin", "builtin_name", help="Built-in sentence or problem name.")(fn)
    return fn


def _size_options(fn):
    fn = click.option("--jobs", default=1, show_default=True, type=click.IntRange(1),
                      help="Worker processes for exhaustive scans.")(fn)
    fn = click.option("--min-size", default=1, show_default=True, type=click.IntRange(1))(fn)
    fn = click.option("--max-size", type=click.IntRange(1),
                      help="Largest structure size (default 3 for graphs, 6 for strings).")(fn)
    return fn


@click.group()
@click.option("--convention", type=click.Choice(CONVENTIONS), default="verbatim",
              show_default=True,
              help="Threshold convention for the independent-set and clique built-ins.")
@click.version_option(package_name="artifact")
def main(convention):
    """Finite structures, first-order projections and canonical forms."""
    set_convention(convention)


@main.command("builtins")
def list_builtins():
    """List the built-in names."""
    for name in builtin_names():
        click.echo(name)


# -- eval ---------------------------------------------------------------------

@main.command("eval")
@click.option("--struct", "struct_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--string", "word", help="Binary word as a string structure.")
@_formula_options
@click.option("--witness", is_flag=True, help="Print a witness for the leading SO block.")
@command("eval")
def cmd_eval(struct_path, word, builtin_name, formula_path, text, witness):
    """Evaluate a sentence on a structure."""
    hint = None
    if builtin_name is not None:
        hint = load_sentence(builtin_name, None, None, None)[1]
    A = load_structure(struct_path, word, hint)
    sentence, vocab = load_sentence(builtin_name, formula_path, text, A.vocab)
    if vocab != A.vocab:
        raise FopkitError(f"sentence is over {vocab.name}, structure over {A.vocab.name}")
    value = eval_so(A, sentence)
    result = {"value": value}
    body = "true" if value else "false"
    if witness and value:
        w = find_witness(A, sentence)
        if w is not None:
            shown = {k: _show_witness(v) for k, v in w.values}
            result["witness"] = shown
            body += "".join(f"\n{k} = {v}" for k, v in shown.items())
    return Report("eval", "ok" if value else "counterexample", result, body=body)


def _show_witness(value) -> str:
    if isinstance(value, tuple):
        return "(" + ", ".join(map(str, value)) + ")"
    return "{" + ", ".join("(" + ",".join(map(str, t)) + ")" for t in sorted(value)) + "}"


# -- apply / image ------------------------------------------------------------

@main.command("apply")
@click.option("--query", "query_ref", help="Query file or built-in name.")
@click.option("--builtin", "builtin_name", help="Built-in query name.")
@click.option("--struct", "struct_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--string", "word", help="Binary word as a string structure.")
@click.option("--output", type=click.Path(dir_okay=False, writable=True),
              help="Write the result structure to this file.")
@command("apply")
def cmd_apply(query_ref, builtin_name, struct_path, word, output):
    """Apply a query to a structure."""
    q = load_query(_one(query_ref, builtin_name, "--query", "--builtin"))
    A = load_structure(struct_path, word, q.source)
    B = apply_query(q, A)
    if output:
        Path(output).write_text(format_document([B]))
    body = show_structure(B, word is not None)
    return Report("apply", "ok", {"structure": format_structure(B, "A"),
                                  "string": structure_to_string(B)
                                  if _is_string_vocab(B.vocab) else None}, body=body)


@main.command("image")
@click.option("--fop", "query_ref", required=True, help="Query file or built-in name.")
@click.option("--struct", "struct_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--string", "word", help="Binary word as a string structure.")
@click.option("--max-preimage", type=click.IntRange(1), help="Largest preimage size.")
@command("image")
def cmd_image(query_ref, struct_path, word, max_preimage):
    """Search for a preimage of a structure."""
    q = load_query(query_ref)
    B = load_structure(struct_path, word, q.target)
    bound = max_preimage or _default_max_size(q.source)
    A = image_membership(q, B, bound)
    if A is None:
        return Report("image", "counterexample", {"preimage": None, "max_preimage": bound},
                      body="none")
    return Report("image", "ok", {"preimage": format_structure(A, "A"), "max_preimage": bound},
                  body=show_structure(A, word is not None))


def _one(a, b, la, lb):
    if (a is None) == (b is None):
        raise click.UsageError(f"give exactly one of {la}, {lb}")
    return a if a is not None else b


# -- verify -------------------------------------------------------------------

@main.group("verify")
def verify():
    """Exhaustive verifications up to a size bound."""


def _from_scan(command_name, rep, labels) -> Report:
    if rep.verified:
        return Report(command_name, "ok", {}, None, rep.sizes, rep.checked, rep.seconds)
    details = dict(rep.details)
    related = {}
    memberships = {}
    for key, value in details.items():
        if isinstance(value, Structure):
            related[labels.get(key, key)] = value
        elif value is not None:
            memberships[labels.get(key, key)] = value
    ce = Counterexample(rep.counterexample, memberships, related)
    return Report(command_name, "counterexample", {}, ce, rep.sizes, rep.checked, rep.seconds)


def _source_vocab(query_ref=None, **_):
    return load_query(query_ref).source if query_ref else None


@verify.command("reduction")
@click.option("--fop", "query_ref", required=True, help="Query file or built-in name.")
@click.option("--source", required=True, help="Source problem name.")
@click.option("--target", required=True, help="Target problem name.")
@_size_options
@command("verify reduction", _source_vocab)
def verify_reduction_cmd(query_ref, source, target, max_size, min_size, jobs):
    """Check A in SOURCE iff p(A) in TARGET."""
    p = load_query(query_ref)
    bound = max_size or _default_max_size(p.source)
    rep = verify_reduction(p, load_problem(source), load_problem(target), bound,
                           min_size=min_size, jobs=jobs)
    return _from_scan("verify reduction", rep, {"source_member": "source member",
                                                 "image_member": "image member",
                                                 "image": "image"})


@verify.command("condition-c")
@click.option("--query", "back_ref", required=True, help="Back-query I.")
@click.option("--fop", "query_ref", required=True, help="Projection p.")
@click.option("--problem", required=True, help="Problem name.")
@_size_options
@command("verify condition-c", _source_vocab)
def verify_condition_c_cmd(back_ref, query_ref, problem, max_size, min_size, jobs):
    """Check I(p(A)) and A agree on membership."""
    p = load_query(query_ref)
    bound = max_size or _default_max_size(p.source)
    rep = verify_condition_c(load_query(back_ref), p, load_problem(problem), bound,
                             min_size=min_size, jobs=jobs)
    return _from_scan("verify condition-c", rep, {"source_member": "member",
                                                   "round_trip_member": "round-trip member",
                                                   "image": "image",
                                                   "round_trip": "round trip"})


def _characteristic(query_ref, builtin_name, formula_path, text, max_size, max_preimage,
                    exhaustive, name):
    p = load_query(query_ref)
    beta, vocab = load_sentence(builtin_name, formula_path, text, p.target)
    if vocab != p.target:
        raise FopkitError(f"sentence is over {vocab.name}, query target is {p.target.name}")
    bound = max_size or _default_max_size(p.target)
    started = time.perf_counter()
    rep = verify_characteristic(beta, p, bound, max_preimage_size=max_preimage,
                                exhaustive=exhaustive)
    seconds = time.perf_counter() - started
    result = {"max_preimage": rep.max_preimage_size}
    if exhaustive:
        result["false_positives"] = rep.false_positives
        result["false_negatives"] = rep.false_negatives
    if rep.verified:
        return Report(name, "ok", result, None, rep.sizes, rep.checked, seconds)
    related = {"preimage": rep.preimage} if rep.preimage is not None else {}
    ce = Counterexample(rep.counterexample,
                        {"beta": rep.beta_value, "in image": not rep.beta_value}, related)
    return Report(name, "counterexample", result, ce, rep.sizes, rep.checked, seconds)


def _target_vocab(query_ref=None, **_):
    return load_query(query_ref).target if query_ref else None


@verify.command("characteristic")
@click.option("--fop", "query_ref", required=True, help="Query file or built-in name.")
@_formula_options
@click.option("--max-size", type=click.IntRange(1), help="Largest target size.")
@click.option("--max-preimage", type=click.IntRange(1), help="Largest preimage size.")
@click.option("--exhaustive", is_flag=True, help="Count every disagreement.")
@command("verify characteristic", _target_vocab)
def verify_characteristic_cmd(query_ref, builtin_name, formula_path, text, max_size,
                              max_preimage, exhaustive):
    """Check a sentence holds exactly on the image of a projection."""
    return _characteristic(query_ref, builtin_name, formula_path, text, max_size,
                           max_preimage, exhaustive, "verify characteristic")


def _case_vocab(case=None, **_):
    return decomposition_case(case)[1].vocab if case else None


@verify.command("decomposition")
@click.option("--case", type=click.Choice(CASES), required=True)
@click.option("--lam", help="Residue sentence: built-in name or inline text.")
@click.option("--beta", help="Characteristic sentence: built-in name or inline text.")
@click.option("--simplify", "simplify_dual", is_flag=True, help="Simplify the dual part.")
@click.option("--show", is_flag=True, help="Print the assembled sentence.")
@_size_options
@command("verify decomposition", _case_vocab)
def verify_decomposition_cmd(case, lam, beta, simplify_dual, show, max_size, min_size, jobs):
    """Check the assembled sentence defines the target problem."""
    _, target = decomposition_case(case)
    d, target = decomposition_case(case, lam=_inline(lam, target.vocab),
                                   beta=_inline(beta, target.vocab),
                                   simplify_dual=simplify_dual)
    bound = max_size or _default_max_size(target.vocab)
    rep = verify_decomposition(d, target, bound, min_size=min_size, jobs=jobs)
    report = _from_scan("verify decomposition", rep, {"target_member": "target member",
                                                       "sentence": "sentence"})
    report.result["sentence"] = print_formula(d.sentence)
    report.notes = list(d.notes)
    if show:
        report.body = print_formula(d.sentence)
    return report


def _inline(ref, vocab):
    if ref is None:
        return None
    if ref in builtin_names():
        obj = builtin(ref)
        return obj.sentence if isinstance(obj, Problem) else obj
    return parse_formula_text(ref, vocab)


@verify.command("injective")
@click.option("--fop", "query_ref", required=True, help="Query file or built-in name.")
@_size_options
@command("verify injective", _source_vocab)
def verify_injective_cmd(query_ref, max_size, min_size, jobs):
    """Check no two source structures share an image."""
    p = load_query(query_ref)
    bound = max_size or _default_max_size(p.source)
    started = time.perf_counter()
    rep = check_injective(p, bound, min_size=min_size)
    seconds = time.perf_counter() - started
    if rep.injective:
        return Report("verify injective", "ok", {}, None, rep.sizes, rep.checked, seconds)
    A1, A2 = rep.counterexample
    ce = Counterexample(A1, {"same image": True},
                        {"other preimage": A2, "image": apply_query(p, A1)})
    return Report("verify injective", "counterexample", {}, ce, rep.sizes, rep.checked, seconds)


@main.command("verify-characteristic", hidden=True)
@click.option("--fop", "query_ref", required=True)
@_formula_options
@click.option("--max-size", type=click.IntRange(1))
@click.option("--max-preimage", type=click.IntRange(1))
@click.option("--exhaustive", is_flag=True)
@command("verify characteristic", _target_vocab)
def verify_characteristic_alias(query_ref, builtin_name, formula_path, text, max_size,
                                max_preimage, exhaustive):
    """Alias of ``verify characteristic``."""
    return _characteristic(query_ref, builtin_name, formula_path, text, max_size,
                           max_preimage, exhaustive, "verify characteristic")


# -- dual ---------------------------------------------------------------------

@main.command("dual")
@click.option("--query", "query_ref", required=True, help="Query file or built-in name.")
@_formula_options
@click.option("--simplify", "do_simplify", is_flag=True, help="Simplify the result.")
@click.option("--semantic-check", type=click.IntRange(1),
              help="Compare with evaluation on the query's output for all sizes up to N.")
@click.option("--output", type=click.Path(dir_okay=False, writable=True),
              help="Write the dual formula to this file.")
@command("dual")
def cmd_dual(query_ref, builtin_name, formula_path, text, do_simplify, semantic_check, output):
    """Print the dual of a formula through a query."""
    q = load_query(query_ref)
    theta, vocab = load_sentence(builtin_name, formula_path, text, q.target)
    if vocab != q.target:
        raise FopkitError(f"formula is over {vocab.name}, query target is {q.target.name}")
    res = syntactic_dual(q, theta)
    formula = simplify(res.formula) if do_simplify else res.formula
    shown = print_formula(formula)
    if output:
        Path(output).write_text(shown + "\n")
    result = {"formula": shown}
    if semantic_check is None:
        return Report("dual", "ok", result, notes=list(res.notes), body=shown)
    check = sentence_checker(formula, q.source)
    checked = skipped = 0
    for n in range(1, semantic_check + 1):
        for A in enumerate_structures(q.source, n):
            if try_apply(q, A) is None:
                skipped += 1
                continue
            checked += 1
            syn = check(A)
            sem = semantic_dual_eval(q, theta, A)
            if syn != sem:
                ce = Counterexample(A, {"dual": syn, "on image": sem},
                                    {"image": apply_query(q, A)})
                return Report("dual", "counterexample", result, ce, (1, semantic_check),
                              checked, notes=list(res.notes), body=shown)
    result["skipped"] = skipped
    return Report("dual", "ok", result, None, (1, semantic_check), checked,
                  notes=list(res.notes), body=shown)


if __name__ == "__main__":
    main()
