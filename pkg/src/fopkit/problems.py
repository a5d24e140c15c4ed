"""Decision problems as classes of finite structures."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable

from .evaluate import sentence_checker
from .structures import Structure, Vocabulary


@dataclass(frozen=True, eq=False)
class Problem:
    """A vocabulary with a defining sentence, a membership oracle, or both.

    ``contains`` prefers the oracle: verifiers use it as the ground truth
    the sentences are checked against.
    """

    name: str
    vocab: Vocabulary
    sentence: object = None
    oracle: Callable[[Structure], bool] | None = None

    def __post_init__(self):
        if self.sentence is None and self.oracle is None:
            raise ValueError(f"problem {self.name} needs a sentence or an oracle")

    def contains(self, structure: Structure, method: str | None = None) -> bool:
        method = method or ("oracle" if self.oracle is not None else "sentence")
        if method == "oracle":
            return bool(self.oracle(structure))
        return self.sentence_check(structure)

    @cached_property
    def sentence_check(self):
        if self.sentence is None:
            raise ValueError(f"problem {self.name} has no defining sentence")
        return sentence_checker(self.sentence, self.vocab)

    def __contains__(self, structure: Structure) -> bool:
        return self.contains(structure)
