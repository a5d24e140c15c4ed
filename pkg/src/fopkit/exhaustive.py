"""Exhaustive scans over structure enumerations, optionally split across
worker processes. The result never depends on the number of workers: the
first failure in enumeration order wins."""

from __future__ import annotations

import multiprocessing
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable

from .errors import BudgetExceededError
from .evaluate import default_budget
from .structures import Structure, Vocabulary, count_structures, enumerate_structures

_TASK: Callable | None = None


@dataclass
class ScanResult:
    failure: Structure | None
    payload: object
    examined: int


def _scan_chunk(args):
    vocab, size, start, stop = args
    for offset, A in enumerate(enumerate_structures(vocab, size, start, stop)):
        payload = _TASK(A)
        if payload is not None:
            return start + offset, A, payload
    return None


def scan(vocab: Vocabulary, sizes, check: Callable[[Structure], object], *,
         jobs: int = 1, budget: int | None = None) -> ScanResult:
    """Run ``check`` over every structure of the given sizes; ``check``
    returns ``None`` for success or a payload describing the failure."""
    global _TASK
    sizes = list(sizes)
    counts = [count_structures(vocab, n) for n in sizes]
    budget = default_budget() if budget is None else budget
    if sum(counts) > budget:
        raise BudgetExceededError(
            f"{sum(counts)} structures of sizes {sizes[0]}..{sizes[-1]} exceed the budget "
            f"{budget}; try a smaller --max-size",
            estimate=sum(counts), budget=budget,
        )
    examined = 0
    if jobs <= 1:
        for n, count in zip(sizes, counts):
            for i, A in enumerate(enumerate_structures(vocab, n)):
                payload = check(A)
                if payload is not None:
                    return ScanResult(A, payload, examined + i + 1)
            examined += count
        return ScanResult(None, None, examined)

    _TASK = check
    ctx = multiprocessing.get_context("fork")
    try:
        with ProcessPoolExecutor(max_workers=jobs, mp_context=ctx) as pool:
            for n, count in zip(sizes, counts):
                step = max(1, -(-count // jobs))
                chunks = [(vocab, n, lo, min(lo + step, count)) for lo in range(0, count, step)]
                hits = [h for h in pool.map(_scan_chunk, chunks) if h is not None]
                if hits:
                    index, A, payload = min(hits, key=lambda h: h[0])
                    return ScanResult(A, payload, examined + index + 1)
                examined += count
    finally:
        _TASK = None
    return ScanResult(None, None, examined)
