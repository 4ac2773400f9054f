"""Arbitrary-precision counting bounds and the bound-versus-bound table.

All comparisons are exact integer comparisons; the one bound whose closed form
involves k*log2(k) in the exponent is checked in the cleared form
(sum * k^k >= 2^(kprime*2^k - k*kprime + k^2)) plus its two derivation steps,
so no real-valued exponent arithmetic is ever trusted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from ..errors import BudgetExceededError
from .polys import monomial_count_bound

MAX_K = 10
MAX_KPRIME = 16


def relaxed_monomial_sum(k: int, kprime: int) -> int:
    """sum over i <= 2^k - k of (2^kprime)^i * C(2^k, i): the padded relaxation
    of the monomial count bound."""
    if k < 1 or kprime < 1:
        raise ValueError("k and kprime must be >= 1")
    n = 1 << k
    return sum((1 << kprime) ** i * math.comb(n, i) for i in range(n - k + 1))


def condition_set_bound(k: int, kprime: int) -> int:
    """Closed-form ceiling 2^(kprime*2^k - k*(kprime - k - 1)) on the size of a
    pairwise-condition set (meaningful for k >= 3, kprime >= k)."""
    exponent = kprime * (1 << k) - k * (kprime - k - 1)
    return 1 << exponent


def classical_lower_bound(k: int, kprime: int) -> int:
    """k*(kprime - k) - (k + kprime): bits any classical nondeterministic
    protocol needs (valid for k >= 3, kprime >= k)."""
    return k * (kprime - k) - (k + kprime)


def quantum_upper_bound(k: int, kprime: int) -> int:
    """3*(k + kprime): strict ceiling on the quantum protocol's qubit count."""
    return 3 * (k + kprime)


@dataclass
class CountingReport:
    cells: list = field(default_factory=list)
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"cells": self.cells, "violations": self.violations}


def _record_violation(violations, k, kprime, check, detail):
    violations.append({"k": k, "kprime": kprime, "check": check, **detail})


def check_counting_inequalities(
    pairs: Sequence[tuple[int, int]],
    max_k: int = MAX_K,
    max_kprime: int = MAX_KPRIME,
) -> CountingReport:
    """Exact checks, for every (k, kprime) with k >= 3 and kprime >= k:

    a. strict monomial sum <= relaxed sum,
    b. relaxed sum <= the closed-form ceiling,
    c. the lower direction: relaxed sum >= (2^kprime)^(2^k - k) * C(2^k, k),
       C(2^k, k) * k^k >= 2^(k^2), and the combined cleared inequality,
    d. j -> (2^kprime)^j * C(2^k, j) is nondecreasing on [0, 2^k].

    Cells outside the applicability range are skipped (listed as such); any
    violated inequality is reported with the exact values involved.
    """
    report = CountingReport()
    for k, kprime in pairs:
        if k > max_k or kprime > max_kprime:
            raise BudgetExceededError(
                "counting cell (k, kprime)", (k, kprime), (max_k, max_kprime)
            )
        cell = {"k": k, "kprime": kprime}
        if k < 3 or kprime < k:
            cell["skipped"] = "outside applicability (needs k >= 3, kprime >= k)"
            report.cells.append(cell)
            continue

        n = 1 << k
        strict = monomial_count_bound(k, kprime)
        relaxed = relaxed_monomial_sum(k, kprime)
        ceiling = condition_set_bound(k, kprime)

        ok_a = strict <= relaxed
        ok_b = relaxed <= ceiling

        top_term = (1 << kprime) ** (n - k) * math.comb(n, k)
        ok_c1 = relaxed >= top_term
        ok_c2 = math.comb(n, k) * k**k >= 1 << (k * k)
        ok_c3 = relaxed * k**k >= 1 << (kprime * n - k * kprime + k * k)
        ok_c = ok_c1 and ok_c2 and ok_c3

        ok_d = True
        prev = math.comb(n, 0)  # (2^kprime)^0 * C(n, 0)
        for j in range(1, n + 1):
            cur = (1 << kprime) ** j * math.comb(n, j)
            if cur < prev:
                ok_d = False
                break
            prev = cur

        cell.update(
            {
                "strict_sum_bits": strict.bit_length(),
                "relaxed_sum_bits": relaxed.bit_length(),
                "ceiling_exponent": kprime * n - k * (kprime - k - 1),
                "checks": {
                    "strict_le_relaxed": ok_a,
                    "relaxed_le_ceiling": ok_b,
                    "relaxed_ge_cleared_floor": ok_c,
                    "summand_nondecreasing": ok_d,
                },
            }
        )
        report.cells.append(cell)

        if not ok_a:
            _record_violation(
                report.violations, k, kprime, "strict_le_relaxed",
                {"strict": str(strict), "relaxed": str(relaxed)},
            )
        if not ok_b:
            _record_violation(
                report.violations, k, kprime, "relaxed_le_ceiling",
                {"relaxed": str(relaxed), "ceiling": str(ceiling)},
            )
        if not ok_c:
            _record_violation(
                report.violations, k, kprime, "relaxed_ge_cleared_floor",
                {
                    "relaxed": str(relaxed),
                    "top_term": str(top_term),
                    "cleared_rhs": str(1 << (kprime * n - k * kprime + k * k)),
                    "k_pow_k": str(k**k),
                },
            )
        if not ok_d:
            _record_violation(report.violations, k, kprime, "summand_nondecreasing", {})
    return report


def bound_table(pairs: Sequence[tuple[int, int]]) -> list[dict]:
    """Rows of classical-lower versus quantum-upper bounds; rows with
    kprime == 2k are flagged, since there the lower bound k^2 - 3k is
    quadratic while the upper bound 9k stays linear."""
    rows = []
    for k, kprime in pairs:
        rows.append(
            {
                "k": k,
                "kprime": kprime,
                "classical_lower": classical_lower_bound(k, kprime),
                "quantum_upper": quantum_upper_bound(k, kprime),
                "lower_bound_applicable": k >= 3 and kprime >= k,
                "quadratic_separation_row": kprime == 2 * k,
            }
        )
    return rows
