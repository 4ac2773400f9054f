"""Parsing for the small range grammar used by sweep commands.

A range is "lo..hi" or a single term; each term is an integer or a multiple of
k written like "k" or "2k" (resolved against the row's k, so "--kprime k..12"
sweeps from k up to 12 for every k in the k-range).
"""

from __future__ import annotations

import re

_TERM = re.compile(r"^(?:(\d+)|(\d*)k)$")


def _term(token: str, k: int | None) -> int:
    m = _TERM.match(token.strip())
    if not m:
        raise ValueError(f"bad range term {token!r} (expected an integer, 'k' or '<m>k')")
    if m.group(1) is not None:
        return int(m.group(1))
    if k is None:
        raise ValueError(f"term {token!r} needs a k context")
    coeff = int(m.group(2)) if m.group(2) else 1
    return coeff * k


def parse_range(spec: str, k: int | None = None) -> list[int]:
    """"3..8" -> [3..8]; "4" -> [4]; "k..12" / "2k" resolved against k."""
    spec = str(spec).strip()
    if ".." in spec:
        lo_s, hi_s = spec.split("..", 1)
        lo, hi = _term(lo_s, k), _term(hi_s, k)
    else:
        lo = hi = _term(spec, k)
    if lo > hi:
        return []
    return list(range(lo, hi + 1))


def parse_grid(k_spec: str, kprime_spec: str) -> list[tuple[int, int]]:
    """All (k, kprime) cells of the sweep, k-major then kprime ascending."""
    cells = []
    for k in parse_range(k_spec):
        for kprime in parse_range(kprime_spec, k=k):
            cells.append((k, kprime))
    if not cells:
        raise ValueError(f"empty sweep grid for k={k_spec!r}, kprime={kprime_spec!r}")
    return cells
