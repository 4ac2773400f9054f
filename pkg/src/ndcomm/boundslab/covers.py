"""Exact minimum 1-monochromatic rectangle covers on small domains.

A rectangle A x B is 1-monochromatic when f is 1 on all of it.  The minimum
number of such rectangles covering a target set of 1-cells gives the
nondeterministic communication bound ceil(log2(count)).  Only maximal
rectangles can appear in a minimum cover (any rectangle extends to a maximal
one), so the solver enumerates the maximal ones first - they are exactly the
closed sets of the row-neighborhood intersection lattice - and then runs an
exact set-cover branch and bound over them.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Callable, Sequence

from ..errors import BudgetExceededError

DEFAULT_PAIR_BUDGET = 1 << 14


def ceil_log2(n: int) -> int:
    """Exact ceil(log2(n)) for n >= 1, by bit arithmetic."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    return (n - 1).bit_length()


@dataclass(frozen=True)
class RectCover:
    """A verified witness: rectangles as (A-members, B-members) value tuples."""

    rectangles: tuple[tuple[tuple, tuple], ...]
    target: str

    @property
    def size(self) -> int:
        return len(self.rectangles)


@dataclass(frozen=True)
class CoverResult:
    size: int
    witness: RectCover
    maximal_rectangles: int
    target_cells: int
    comm_lower_bound: int  # ceil(log2(size))


def _bit_indices(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _maximal_rectangles(rows: Sequence[int]) -> list[tuple[int, int]]:
    """All maximal 1-rectangles as (row-mask, col-mask) pairs.

    Every maximal rectangle's column set is an intersection of row
    neighborhoods, and those closed sets are found by intersecting each known
    one with every row until no new set appears.
    """
    closed: set[int] = set()
    frontier = {r for r in rows if r}
    while frontier:
        closed |= frontier
        nxt = set()
        for b in frontier:
            for r in rows:
                inter = b & r
                if inter and inter not in closed:
                    nxt.add(inter)
        frontier = nxt - closed
    rects = []
    for cols in closed:
        rows_mask = 0
        for i, r in enumerate(rows):
            if r & cols == cols:
                rows_mask |= 1 << i
        rects.append((rows_mask, cols))
    return sorted(rects)


def min_one_cover(
    f: Callable[[object, object], int],
    xs: Sequence,
    ys: Sequence,
    target: str = "all-ones",
    pair_budget: int = DEFAULT_PAIR_BUDGET,
) -> CoverResult:
    """Exact minimum number of 1-monochromatic rectangles covering the target.

    target is "all-ones" (every 1-cell) or "diagonal" (cells (i, i), which must
    all be 1-cells).  The returned witness is re-verified before returning.
    """
    if len(xs) * len(ys) > pair_budget:
        raise BudgetExceededError("cover domain cells", len(xs) * len(ys), pair_budget)

    rows = []
    for x in xs:
        mask = 0
        for j, y in enumerate(ys):
            if f(x, y) == 1:
                mask |= 1 << j
        rows.append(mask)

    if target == "all-ones":
        cells = [(i, j) for i, r in enumerate(rows) for j in _bit_indices(r)]
    elif target == "diagonal":
        if len(xs) != len(ys):
            raise ValueError("diagonal target needs equally long input lists")
        cells = [(i, i) for i in range(len(xs))]
        for i, _ in cells:
            if not (rows[i] >> i) & 1:
                raise ValueError(f"diagonal cell {i} is not a 1-cell; target is uncoverable")
    else:
        raise ValueError(f"unknown target {target!r}")

    if not cells:
        witness = RectCover((), target)
        return CoverResult(0, witness, 0, 0, 0)

    rects = _maximal_rectangles(rows)
    cover_masks = []
    for rows_mask, cols_mask in rects:
        m = 0
        for idx, (i, j) in enumerate(cells):
            if (rows_mask >> i) & 1 and (cols_mask >> j) & 1:
                m |= 1 << idx
        cover_masks.append(m)

    chosen = _exact_set_cover(cover_masks, (1 << len(cells)) - 1)
    witness = RectCover(
        tuple(
            (
                tuple(xs[i] for i in _bit_indices(rects[r][0])),
                tuple(ys[j] for j in _bit_indices(rects[r][1])),
            )
            for r in chosen
        ),
        target,
    )
    verify_rect_cover(f, witness, [(xs[i], ys[j]) for i, j in cells])
    return CoverResult(len(chosen), witness, len(rects), len(cells), ceil_log2(len(chosen)))


def _exact_set_cover(masks: Sequence[int], universe: int) -> tuple[int, ...]:
    """Minimum-cardinality cover of the universe bitmask; deterministic.

    Branch on the uncovered element with the fewest covering sets; children in
    (coverage desc, index asc) order; prune with the greedy upper bound and the
    ceil(remaining / best-coverage) lower bound.
    """
    masks = list(masks)
    useful = [i for i, m in enumerate(masks) if m & universe]
    if not useful:
        raise ValueError("target cell not covered by any 1-rectangle")

    # greedy upper bound
    best: list[int] = []
    covered = 0
    while covered != universe:
        pick = max(useful, key=lambda i: ((masks[i] & ~covered).bit_count(), -i))
        gain = (masks[pick] & ~covered).bit_count()
        if gain == 0:
            raise ValueError("target not coverable by the available rectangles")
        best.append(pick)
        covered |= masks[pick]
    best_size = len(best)

    element_sets: dict[int, list[int]] = {}
    for e in _bit_indices(universe):
        element_sets[e] = [i for i in useful if (masks[i] >> e) & 1]
        if not element_sets[e]:
            raise ValueError("target cell not covered by any 1-rectangle")

    best_solution = list(best)

    def dfs(covered: int, chosen: list[int]):
        nonlocal best_size, best_solution
        if covered == universe:
            if len(chosen) < best_size:
                best_size = len(chosen)
                best_solution = list(chosen)
            return
        remaining = universe & ~covered
        max_gain = max((masks[i] & remaining).bit_count() for i in useful)
        if len(chosen) + math.ceil(remaining.bit_count() / max_gain) >= best_size:
            return
        branch_e = min(
            _bit_indices(remaining), key=lambda e: (len(element_sets[e]), e)
        )
        options = sorted(
            element_sets[branch_e],
            key=lambda i: (-(masks[i] & remaining).bit_count(), i),
        )
        for i in options:
            if len(chosen) + 1 >= best_size:
                break
            chosen.append(i)
            dfs(covered | masks[i], chosen)
            chosen.pop()

    dfs(0, [])
    return tuple(sorted(best_solution))


def verify_rect_cover(f, witness: RectCover, target_cells: Sequence[tuple]) -> None:
    """Re-check a witness: every rectangle 1-monochromatic, union covers the target."""
    for a_members, b_members in witness.rectangles:
        for x in a_members:
            for y in b_members:
                if f(x, y) != 1:
                    raise AssertionError(f"rectangle not 1-monochromatic at ({x}, {y})")
    for x, y in target_cells:
        if not any(
            x in a_members and y in b_members
            for a_members, b_members in witness.rectangles
        ):
            raise AssertionError(f"target cell ({x}, {y}) not covered")


def diagonal_cover_lower_bound(params, max_condition_size: int) -> int:
    """ceil(#inputs / max_condition_size): rectangles needed to cover the
    diagonal when no 1-monochromatic block on it can exceed max_condition_size.

    ceil(log2(.)) of the result is a communication lower bound.
    """
    if max_condition_size < 1:
        raise ValueError("max_condition_size must be >= 1")
    total = params.alphabet**params.length
    return -(-total // max_condition_size)


def cover_to_csv(witness: RectCover, render=str) -> str:
    """CSV export: rectangle id, A-members, B-members (members ';'-joined)."""
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["rectangle_id", "a_members", "b_members"])
    for idx, (a_members, b_members) in enumerate(witness.rectangles):
        writer.writerow(
            [idx, ";".join(render(x) for x in a_members), ";".join(render(y) for y in b_members)]
        )
    return buf.getvalue()
