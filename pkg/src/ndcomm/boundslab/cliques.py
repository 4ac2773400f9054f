"""The extremal pairwise condition as a graph problem.

A set A of game inputs satisfies the pairwise condition when every two
distinct members disagree in a pattern that is NOT a Hadamard codeword (equal
members are excluded by definition; the diagonal pattern is all-zero and
counts as satisfied).  Such sets are exactly the cliques of the graph whose
vertices are all inputs and whose edges join inputs with a non-codeword
disagreement pattern, so the largest one is a maximum-clique instance.

Solvers here are deterministic: the exact one is a bitset branch and bound
with a greedy-coloring bound, the heuristic one is seeded random greedy
extension, and the exhaustive cross-check pins the all-zero input using the
graph's translation symmetry and enumerates every clique through it.  Every
returned witness is re-verified against the pairwise condition directly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator, Sequence

from .. import hadamard
from ..errors import BudgetExceededError
from ..heqfun import (
    HeqInput,
    HeqParams,
    all_inputs,
    input_count,
    random_input,
)

DEFAULT_VERTEX_BUDGET = 1 << 12
DEFAULT_HEURISTIC_RESTARTS = 64
DEFAULT_HEURISTIC_STEPS = 512


def _pattern_mask(a: HeqInput, b: HeqInput) -> int:
    mask = 0
    for i, (x, y) in enumerate(zip(a.entries, b.entries), start=1):
        if x != y:
            mask |= 1 << i
    return mask


def _nonzero_codeword_masks(k: int) -> frozenset[int]:
    return frozenset(
        sum(bit << i for i, bit in enumerate(c.bits))
        for c in hadamard.codewords(k)
    ) - {0}


def pair_ok(a: HeqInput, b: HeqInput) -> bool:
    """Pairwise condition for one pair: equal, or disagreement not a codeword."""
    if a.entries == b.entries:
        return True
    return _pattern_mask(a, b) not in _nonzero_codeword_masks(a.params.k)


def condition_set_ok(members: Sequence[HeqInput]) -> bool:
    """Direct check of the pairwise condition, independent of any graph."""
    for i, a in enumerate(members):
        for b in members[i + 1 :]:
            if a.entries == b.entries or not pair_ok(a, b):
                return False
    return True


@dataclass(frozen=True)
class ConditionGraph:
    params: HeqParams
    vertices: tuple[HeqInput, ...]
    adjacency: tuple[int, ...]  # bitmask rows

    @property
    def n(self) -> int:
        return len(self.vertices)

    def degree(self, v: int) -> int:
        return self.adjacency[v].bit_count()


def build_condition_graph(
    params: HeqParams, vertex_budget: int = DEFAULT_VERTEX_BUDGET
) -> ConditionGraph:
    n = input_count(params)
    if n > vertex_budget:
        raise BudgetExceededError("condition-graph vertices", n, vertex_budget)
    vertices = tuple(all_inputs(params))
    bad = _nonzero_codeword_masks(params.k)
    adjacency = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if _pattern_mask(vertices[i], vertices[j]) not in bad:
                adjacency[i] |= 1 << j
                adjacency[j] |= 1 << i
    return ConditionGraph(params, vertices, tuple(adjacency))


def _bit_indices(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _greedy_color_order(adj: Sequence[int], candidates: int) -> list[tuple[int, int]]:
    """(vertex, color-count-so-far) pairs; the color count bounds any clique
    inside the prefix, enabling the standard coloring prune."""
    order = []
    color = 0
    remaining = candidates
    while remaining:
        color += 1
        available = remaining
        while available:
            v = (available & -available).bit_length() - 1
            available &= available - 1
            available &= ~adj[v]
            remaining &= ~(1 << v)
            order.append((v, color))
    return order


def _max_clique_bitset(adj: Sequence[int], n: int) -> int:
    """Maximum clique as a vertex bitmask, deterministic."""
    best_mask = 0
    best_size = 0

    def expand(current_mask: int, current_size: int, candidates: int):
        nonlocal best_mask, best_size
        order = _greedy_color_order(adj, candidates)
        for v, bound in reversed(order):
            if current_size + bound <= best_size:
                return
            new_candidates = candidates & adj[v]
            new_mask = current_mask | (1 << v)
            if current_size + 1 > best_size:
                best_size = current_size + 1
                best_mask = new_mask
            if new_candidates:
                expand(new_mask, current_size + 1, new_candidates)
            candidates &= ~(1 << v)

    expand(0, 0, (1 << n) - 1)
    return best_mask


@dataclass(frozen=True)
class CliqueResult:
    size: int
    witness: tuple[HeqInput, ...]
    mode: str
    exact: bool

    def witness_entries(self) -> list[list[int]]:
        return [list(v.entries) for v in self.witness]


def max_condition_set(
    params: HeqParams,
    mode: str = "exact",
    seed: int | None = None,
    restarts: int = DEFAULT_HEURISTIC_RESTARTS,
    steps: int = DEFAULT_HEURISTIC_STEPS,
    vertex_budget: int = DEFAULT_VERTEX_BUDGET,
) -> CliqueResult:
    """Largest set satisfying the pairwise condition.

    exact mode solves maximum clique on the full graph (vertex budget
    enforced); heuristic mode runs seeded random greedy extension without ever
    materializing the graph, returning a verified lower-bound witness.  The
    heuristic budget is a deterministic work budget (restarts x steps), not
    wall-clock, so seeded runs are reproducible.
    """
    if mode == "exact":
        graph = build_condition_graph(params, vertex_budget)
        mask = _max_clique_bitset(graph.adjacency, graph.n)
        witness = tuple(graph.vertices[i] for i in _bit_indices(mask))
    elif mode == "heuristic":
        if seed is None:
            raise ValueError("heuristic mode requires a seed")
        witness = _greedy_heuristic(params, seed, restarts, steps)
    else:
        raise ValueError(f"unknown mode {mode!r}")

    witness = tuple(sorted(witness, key=lambda v: v.entries))
    if not condition_set_ok(witness):
        raise AssertionError("solver returned a set violating the pairwise condition")
    return CliqueResult(len(witness), witness, mode, mode == "exact")


def _greedy_heuristic(
    params: HeqParams, seed: int, restarts: int, steps: int
) -> tuple[HeqInput, ...]:
    rng = random.Random(seed)
    best: list[HeqInput] = []
    for _ in range(max(1, restarts)):
        clique: list[HeqInput] = [random_input(params, rng)]
        seen = {clique[0].entries}
        for _ in range(max(1, steps)):
            cand = random_input(params, rng)
            if cand.entries in seen:
                continue
            if all(pair_ok(cand, v) for v in clique):
                clique.append(cand)
                seen.add(cand.entries)
        if len(clique) > len(best):
            best = clique
    return tuple(best)


def max_condition_set_exhaustive(
    params: HeqParams, vertex_budget: int = DEFAULT_VERTEX_BUDGET
) -> int:
    """Independent cross-check: exhaustive clique enumeration.

    Applying the same per-coordinate bijection to every input preserves all
    disagreement patterns, so translating any witness by one of its members
    maps it to a witness containing the all-zero input; the search therefore
    pins vertex 0 and enumerates every clique inside its neighborhood, with
    only the trivial cannot-beat-the-best cutoff.
    """
    graph = build_condition_graph(params, vertex_budget)
    zero_index = 0
    assert all(e == 0 for e in graph.vertices[zero_index].entries)
    adj = graph.adjacency
    best = 1  # the singleton {all-zero input}

    def extend(size: int, candidates: int):
        nonlocal best
        if size > best:
            best = size
        if size + candidates.bit_count() <= best:
            return
        rest = candidates
        for v in _bit_indices(candidates):
            rest &= ~(1 << v)
            extend(size + 1, rest & adj[v])

    extend(1, adj[zero_index])
    return best


def enumerate_condition_sets(
    params: HeqParams,
    vertex_budget: int = DEFAULT_VERTEX_BUDGET,
    max_sets: int = 1 << 16,
) -> Iterator[tuple[HeqInput, ...]]:
    """Every nonempty set satisfying the pairwise condition (every clique),
    in deterministic order; guarded by a count budget."""
    graph = build_condition_graph(params, vertex_budget)
    adj = graph.adjacency
    emitted = 0

    def emit(members: list[int], candidates: int) -> Iterator[tuple[int, ...]]:
        rest = candidates
        for v in _bit_indices(candidates):
            rest &= ~(1 << v)
            yield tuple(members + [v])
            yield from emit(members + [v], rest & adj[v])

    for combo in emit([], (1 << graph.n) - 1):
        emitted += 1
        if emitted > max_sets:
            raise BudgetExceededError("condition sets", emitted, max_sets)
        yield tuple(graph.vertices[i] for i in combo)
