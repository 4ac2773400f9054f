"""Reference oracles for the Hadamard equality game and plain non-equality.

The Hadamard equality game on parameters (k, kprime): each party holds a
vector of 2^k - 1 integers below 2^kprime.  The value is 0 exactly when the
componentwise disagreement pattern (prefixed with a 0 at index 0) is a nonzero
Hadamard codeword, and 1 otherwise.  The diagonal a == b gives the all-zero
pattern, which is excluded, so equal inputs are 1-instances.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from typing import Iterator

from . import hadamard
from .errors import BudgetExceededError
from .hadamard import Bits

DEFAULT_PAIR_BUDGET = 1 << 24


@dataclass(frozen=True)
class HeqParams:
    """Game parameters: vectors of length 2^k - 1 over the alphabet [0, 2^kprime)."""

    k: int
    kprime: int

    def __post_init__(self):
        if self.k < 1 or self.kprime < 1:
            raise ValueError(f"k and kprime must be >= 1, got {self}")

    @property
    def length(self) -> int:
        return (1 << self.k) - 1

    @property
    def alphabet(self) -> int:
        return 1 << self.kprime


@dataclass(frozen=True)
class HeqInput:
    """One party's vector, entries indexed 1..2^k-1 (stored 0-based)."""

    params: HeqParams
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.params.length:
            raise ValueError(
                f"expected {self.params.length} entries, got {len(self.entries)}"
            )
        if any(not 0 <= e < self.params.alphabet for e in self.entries):
            raise ValueError(f"entries must lie in [0, {self.params.alphabet})")

    def entry(self, i: int) -> int:
        """Entry a_i for i in [0, 2^k - 1], with the convention a_0 = 0."""
        return 0 if i == 0 else self.entries[i - 1]


def delta(a: int, b: int) -> int:
    """0 if a == b else 1."""
    return int(a != b)


def _check_same_params(a: HeqInput, b: HeqInput) -> HeqParams:
    if a.params != b.params:
        raise ValueError(f"mismatched parameters: {a.params} vs {b.params}")
    return a.params


def delta_pattern(a: HeqInput, b: HeqInput) -> Bits:
    """Disagreement pattern (0, delta(a_1,b_1), ..., delta(a_{2^k-1},b_{2^k-1}))."""
    _check_same_params(a, b)
    return (0,) + tuple(delta(x, y) for x, y in zip(a.entries, b.entries))


def heq(a: HeqInput, b: HeqInput) -> int:
    """0 iff the disagreement pattern is a nonzero Hadamard codeword, else 1."""
    pattern = delta_pattern(a, b)
    if any(pattern) and hadamard.is_codeword(pattern):
        return 0
    return 1


def neq(x: int, y: int, n: int) -> int:
    """1 iff the n-bit integers x and y differ."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not (0 <= x < 1 << n and 0 <= y < 1 << n):
        raise ValueError(f"inputs must lie in [0, 2^{n}), got {x}, {y}")
    return int(x != y)


def input_count(params: HeqParams) -> int:
    return params.alphabet ** params.length


def all_inputs(params: HeqParams) -> Iterator[HeqInput]:
    """All inputs in lexicographic entry order."""
    for entries in itertools.product(range(params.alphabet), repeat=params.length):
        yield HeqInput(params, entries)


def random_input(params: HeqParams, rng: random.Random) -> HeqInput:
    return HeqInput(
        params, tuple(rng.randrange(params.alphabet) for _ in range(params.length))
    )


def planted_zero_instance(
    params: HeqParams, rng: random.Random
) -> tuple[HeqInput, HeqInput]:
    """A pair whose disagreement pattern is a random nonzero codeword (a 0-instance)."""
    a = random_input(params, rng)
    w = rng.randrange(1, 1 << params.k)
    pattern = hadamard.encode(tuple((w >> s) & 1 for s in range(params.k))).bits
    b_entries = []
    for i in range(1, params.length + 1):
        if pattern[i]:
            b_entries.append((a.entries[i - 1] + rng.randrange(1, params.alphabet)) % params.alphabet)
        else:
            b_entries.append(a.entries[i - 1])
    return a, HeqInput(params, tuple(b_entries))


def enumerate_instances(
    params: HeqParams,
    mode: str = "exhaustive",
    count: int | None = None,
    seed: int | None = None,
    pair_budget: int = DEFAULT_PAIR_BUDGET,
) -> Iterator[tuple[HeqInput, HeqInput]]:
    """Stream instance pairs (Alice, Bob).

    exhaustive: every ordered pair once (rejected when the pair count exceeds
    the budget).  diagonal: every (a, a).  sample: `count` pseudo-random pairs,
    reproducible from `seed`, with the diagonal and planted-codeword
    0-instances each making up a third of the stream; uniform pairs are almost
    surely 1-instances, so the planted thirds are what exercises exactness.
    """
    if mode == "exhaustive":
        total = input_count(params) ** 2
        if total > pair_budget:
            raise BudgetExceededError("exhaustive instance pairs", total, pair_budget)
        for a in all_inputs(params):
            for b in all_inputs(params):
                yield a, b
    elif mode == "diagonal":
        total = input_count(params)
        if total > pair_budget:
            raise BudgetExceededError("diagonal instance pairs", total, pair_budget)
        for a in all_inputs(params):
            yield a, a
    elif mode == "sample":
        if count is None or seed is None:
            raise ValueError("sample mode requires count and seed")
        rng = random.Random(seed)
        for i in range(count):
            kind = i % 3
            if kind == 0:
                a = random_input(params, rng)
                yield a, a
            elif kind == 1:
                yield planted_zero_instance(params, rng)
            else:
                yield random_input(params, rng), random_input(params, rng)
    else:
        raise ValueError(f"unknown mode {mode!r}")


def instance_to_json(a: HeqInput, b: HeqInput) -> dict:
    params = _check_same_params(a, b)
    return {
        "k": params.k,
        "kprime": params.kprime,
        "a": list(a.entries),
        "b": list(b.entries),
    }


def instance_from_json(obj: dict | str) -> tuple[HeqInput, HeqInput]:
    if isinstance(obj, str):
        obj = json.loads(obj)
    params = HeqParams(obj["k"], obj["kprime"])
    return HeqInput(params, tuple(obj["a"])), HeqInput(params, tuple(obj["b"]))
