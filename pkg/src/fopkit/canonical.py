"""Reductions, the membership congruence, and canonical decompositions.

A decomposition assembles ``(beta & dual(I, psi)) | (!beta & lam)`` over the
target vocabulary of a projection ``p``; :func:`verify_decomposition` checks
it against a target problem on every structure up to a size bound.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from . import syntax as s
from .dual import syntactic_dual
from .errors import FopkitError
from .evaluate import sentence_checker
from .exhaustive import scan
from .library import builtin, builtin_names
from .problems import Problem
from .query import Query, apply_query, try_apply
from .structures import Structure
from .transform import simplify


__all__ = [
    "CASES", "Decomposition", "ReductionReport", "build_decomposition", "builtin",
    "builtin_names", "cong", "decomposition_case", "verify_condition_c",
    "verify_decomposition", "verify_reduction",
]


def cong(problem: Problem, A: Structure, B: Structure) -> bool:
    """``A`` and ``B`` agree on membership in ``problem``."""
    return problem.contains(A) == problem.contains(B)


@dataclass
class ReductionReport:
    verdict: str  # "verified" or "counterexample"
    counterexample: Structure | None
    details: dict = field(default_factory=dict)
    sizes: tuple[int, int] = (1, 1)
    checked: int = 0
    seconds: float = 0.0

    @property
    def verified(self) -> bool:
        return self.verdict == "verified"


def _report(result, sizes, started) -> ReductionReport:
    if result.failure is None:
        return ReductionReport("verified", None, {}, sizes, result.examined,
                               time.perf_counter() - started)
    return ReductionReport("counterexample", result.failure, result.payload, sizes,
                           result.examined, time.perf_counter() - started)


def verify_reduction(p: Query, source: Problem, target: Problem, size_bound: int, *,
                     min_size: int = 1, jobs: int = 1,
                     budget: int | None = None) -> ReductionReport:
    """Check ``A in source <=> p(A) in target`` for every source structure
    with ``min_size <= |A| <= size_bound``. Structures whose image is
    undefined count as counterexamples."""
    _same(p.source, source.vocab, "source")
    _same(p.target, target.vocab, "target")
    started = time.perf_counter()

    def check(A):
        a_in = source.contains(A)
        try:
            B = apply_query(p, A)
        except FopkitError as exc:
            return {"source_member": a_in, "image": None, "error": str(exc)}
        b_in = target.contains(B)
        if a_in != b_in:
            return {"source_member": a_in, "image": B, "image_member": b_in}
        return None

    sizes = (min_size, size_bound)
    return _report(scan(p.source, range(min_size, size_bound + 1), check,
                        jobs=jobs, budget=budget), sizes, started)


def verify_condition_c(I: Query, p: Query, problem: Problem, size_bound: int, *,
                       min_size: int = 1, jobs: int = 1,
                       budget: int | None = None) -> ReductionReport:
    """Check ``I(p(A))`` and ``A`` agree on membership in ``problem`` for
    every ``A`` up to ``size_bound``."""
    _same(p.source, problem.vocab, "source")
    _same(I.source, p.target, "back-query source")
    _same(I.target, problem.vocab, "back-query target")
    started = time.perf_counter()

    def check(A):
        a_in = problem.contains(A)
        B = try_apply(p, A)
        C = None if B is None else try_apply(I, B)
        if C is None:
            return {"source_member": a_in, "image": B, "round_trip": None,
                    "error": "undefined image"}
        c_in = problem.contains(C)
        if a_in != c_in:
            return {"source_member": a_in, "image": B, "round_trip": C,
                    "round_trip_member": c_in}
        return None

    sizes = (min_size, size_bound)
    return _report(scan(p.source, range(min_size, size_bound + 1), check,
                        jobs=jobs, budget=budget), sizes, started)


@dataclass(frozen=True)
class Decomposition:
    p: Query
    I: Query
    psi: object
    lam: object
    beta: object
    dual: object
    sentence: object
    notes: tuple[str, ...] = ()


def build_decomposition(p: Query, I: Query, psi, lam, beta, *,
                        simplify_dual: bool = False) -> Decomposition:
    """Assemble ``(beta & dual(I, psi)) | (!beta & lam)``."""
    _same(I.source, p.target, "back-query source")
    result = syntactic_dual(I, psi)
    dual = simplify(result.formula) if simplify_dual else result.formula
    sentence = s.Or(s.And(beta, dual), s.And(s.Not(beta), lam))
    return Decomposition(p, I, psi, lam, beta, dual, sentence, result.notes)


def verify_decomposition(decomp: Decomposition, target: Problem, size_bound: int, *,
                         min_size: int = 1, jobs: int = 1,
                         budget: int | None = None) -> ReductionReport:
    """Check ``B in target <=> B |= decomp.sentence`` for every target
    structure up to ``size_bound``."""
    _same(decomp.p.target, target.vocab, "target")
    started = time.perf_counter()
    holds = sentence_checker(decomp.sentence, target.vocab, budget=budget)

    def check(B):
        member = target.contains(B)
        value = holds(B)
        if member != value:
            return {"target_member": member, "sentence": value}
        return None

    sizes = (min_size, size_bound)
    return _report(scan(target.vocab, range(min_size, size_bound + 1), check,
                        jobs=jobs, budget=budget), sizes, started)


def _same(a, b, label):
    if a != b:
        raise FopkitError(f"{label} vocabulary mismatch: {a.name} vs {b.name}")


# -- the two worked cases ---------------------------------------------------

CASES = ("clique", "subgraphiso", "identity")


def decomposition_case(name: str, *, lam=None, beta=None,
                       simplify_dual: bool = False) -> tuple[Decomposition, Problem]:
    """Built-in decompositions with their target problems.

    ``clique``: complement projection both ways, ``psi`` the independent-set
    sentence, ``beta = true``, residue ``false``. ``subgraphiso``: the
    clique projection with the back-query, ``psi`` the clique sentence,
    residue the subgraph-isomorphism sentence, ``beta`` the closed
    characteristic sentence; this case runs under the strict threshold
    convention so that both problems count vertices the same way.
    ``identity``: identity query, ``psi`` the clique sentence.
    """
    if name == "clique":
        p = builtin("fop_complement")
        d = build_decomposition(p, p, builtin("PSI_IS"),
                                s.FALSE if lam is None else lam,
                                s.TRUE if beta is None else beta,
                                simplify_dual=simplify_dual)
        return d, builtin("CLIQUE")
    if name == "subgraphiso":
        p = builtin("fop_clique_to_sgi", "strict")
        d = build_decomposition(p, builtin("query_sgi_back"),
                                builtin("PSI_CL", "strict"),
                                builtin("PSI_SG") if lam is None else lam,
                                builtin("BETA_SGI") if beta is None else beta,
                                simplify_dual=simplify_dual)
        return d, builtin("SUBGRAPHISO", "strict")
    if name == "identity":
        p = builtin("id_query")
        d = build_decomposition(p, p, builtin("PSI_CL"),
                                s.FALSE if lam is None else lam,
                                s.TRUE if beta is None else beta,
                                simplify_dual=simplify_dual)
        return d, builtin("CLIQUE")
    raise FopkitError(f"unknown decomposition case {name!r}; choose from {', '.join(CASES)}")
