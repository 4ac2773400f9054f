"""Multivariate polynomials over the rationals and the rank certificate.

For an input vector a, the membership product multiplies, over every
non-power index i, the factor

    1 - eps_{a_i}(X_i) - eps_{a_[i]}(X_[i]) - eps_{a_(i-[i])}(X_(i-[i]))

where eps_v is the univariate polynomial with eps_v(u) = (0 if u == v else 1)
on the alphabet grid (one minus the Lagrange indicator at v).  On a set whose
pairwise disagreement patterns avoid the Hadamard code, these products take
odd values on the diagonal and even values off it, which forces the reduced
polynomials to be linearly independent over the rationals; the certificate
checks the parity matrix, the exact rational rank, and the monomial budget.

Every factor is a sum of univariate terms, so no monomial can touch more
distinct variables than there are factors, and grid reduction (exponents cut
below the alphabet size) never adds variables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from ..errors import BudgetExceededError
from ..hadamard import floor_power_of_two, non_power_indices
from ..heqfun import HeqInput
from .cliques import condition_set_ok

DEFAULT_BASIS_BUDGET = 1 << 12

Monomial = tuple[tuple[int, int], ...]  # ((variable, exponent), ...) sorted by variable


def _make_monomial(pairs) -> Monomial:
    merged: dict[int, int] = {}
    for var, exp in pairs:
        if exp:
            merged[var] = merged.get(var, 0) + exp
    return tuple(sorted(merged.items()))


@dataclass
class MultiPoly:
    """Sparse multivariate polynomial with exact rational coefficients."""

    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {m: Fraction(c) for m, c in self.terms.items() if c != 0}

    @classmethod
    def constant(cls, c) -> "MultiPoly":
        return cls({(): Fraction(c)} if c else {})

    @classmethod
    def variable(cls, var: int) -> "MultiPoly":
        return cls({((var, 1),): Fraction(1)})

    @classmethod
    def univariate(cls, var: int, coeffs: Sequence[Fraction]) -> "MultiPoly":
        """Polynomial sum(coeffs[e] * X_var^e)."""
        terms = {}
        for e, c in enumerate(coeffs):
            if c:
                terms[_make_monomial([(var, e)])] = Fraction(c)
        return cls(terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, MultiPoly) and self.terms == other.terms

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, Fraction(0)) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return MultiPoly(out)

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + other.scaled(-1)

    def scaled(self, c) -> "MultiPoly":
        c = Fraction(c)
        if not c:
            return MultiPoly()
        return MultiPoly({m: coeff * c for m, coeff in self.terms.items()})

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _make_monomial(m1 + m2)
                s = out.get(m, Fraction(0)) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return MultiPoly(out)

    def evaluate(self, point: Mapping[int, int]) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for var, exp in m:
                v *= Fraction(point[var]) ** exp
            total += v
        return total

    def max_distinct_variables(self) -> int:
        return max((len(m) for m in self.terms), default=0)

    def max_exponent(self) -> int:
        return max((e for m in self.terms for _, e in m), default=0)

    def monomials(self) -> set[Monomial]:
        return set(self.terms)


def epsilon_poly(a: int, kprime: int, var: int = 1) -> MultiPoly:
    """Univariate polynomial in X_var with value (0 if u == a else 1) on
    u in [0, 2^kprime): one minus the Lagrange indicator at a."""
    alphabet = 1 << kprime
    if not 0 <= a < alphabet:
        raise ValueError(f"value {a} outside the alphabet [0, {alphabet})")
    # indicator at a: prod_{b != a} (X - b) / (a - b)
    coeffs = [Fraction(1)]
    denom = 1
    for b in range(alphabet):
        if b == a:
            continue
        denom *= a - b
        nxt = [Fraction(0)] * (len(coeffs) + 1)
        for e, c in enumerate(coeffs):
            nxt[e + 1] += c
            nxt[e] -= c * b
        coeffs = nxt
    indicator = [c / denom for c in coeffs]
    eps = [-c for c in indicator]
    eps[0] += 1
    return MultiPoly.univariate(var, eps)


def build_membership_product(a: HeqInput) -> MultiPoly:
    """The product over non-power indices of the three-way epsilon factor.

    Variables X_1 .. X_(2^k - 1) line up with the entry indices; no monomial
    touches more than 2^k - k - 1 distinct variables (one per factor).
    """
    k, kprime = a.params.k, a.params.kprime
    product = MultiPoly.constant(1)
    for i in non_power_indices(k):
        top = floor_power_of_two(i)
        factor = (
            MultiPoly.constant(1)
            - epsilon_poly(a.entry(i), kprime, var=i)
            - epsilon_poly(a.entry(top), kprime, var=top)
            - epsilon_poly(a.entry(i - top), kprime, var=i - top)
        )
        product = product * factor
    return product


@lru_cache(maxsize=None)
def _grid_modulus(kprime: int) -> tuple[Fraction, ...]:
    """Coefficients of the monic modulus X(X-1)...(X-(2^kprime - 1))."""
    mod = [Fraction(1)]
    for b in range(1 << kprime):
        nxt = [Fraction(0)] * (len(mod) + 1)
        for e, c in enumerate(mod):
            nxt[e + 1] += c
            nxt[e] -= c * b
        mod = nxt
    return tuple(mod)


@lru_cache(maxsize=None)
def _power_remainder(exp: int, kprime: int) -> tuple[Fraction, ...]:
    """Coefficients of X^exp modulo X(X-1)...(X-(2^kprime - 1))."""
    alphabet = 1 << kprime
    if exp < alphabet:
        coeffs = [Fraction(0)] * alphabet
        coeffs[exp] = Fraction(1)
        return tuple(coeffs)
    mod = _grid_modulus(kprime)
    rem = list(_power_remainder(alphabet - 1, kprime))
    for _ in range(alphabet, exp + 1):
        shifted = [Fraction(0)] + rem
        lead = shifted.pop()
        if lead:
            for e in range(alphabet):
                shifted[e] -= lead * mod[e]
        rem = shifted
    return tuple(rem)


def reduce_poly(p: MultiPoly, kprime: int) -> MultiPoly:
    """Cut every exponent below 2^kprime without changing grid values.

    Each X^e with e >= 2^kprime is replaced by its remainder modulo
    X(X-1)...(X-(2^kprime - 1)), variable by variable; the modulus vanishes on
    the grid, so values on [0, 2^kprime)^vars are unchanged, and substitution
    is univariate, so no monomial gains variables.
    """
    alphabet = 1 << kprime
    out: dict = {}
    for mono, coeff in p.terms.items():
        high = [(var, exp) for var, exp in mono if exp >= alphabet]
        if not high:
            out[mono] = out.get(mono, Fraction(0)) + coeff
            continue
        passthrough = tuple((var, exp) for var, exp in mono if exp < alphabet)
        piece = MultiPoly({passthrough: coeff})
        for var, exp in high:
            piece = piece * MultiPoly.univariate(var, _power_remainder(exp, kprime))
        for m, c in piece.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
    return MultiPoly(out)


def monomial_count_bound(k: int, kprime: int) -> int:
    """Number of monomial functions with at most 2^k - k - 1 distinct variables
    out of 2^k - 1, each with exponent below 2^kprime:
    sum over i of (2^kprime - 1)^i * C(2^k - 1, i)."""
    if k < 1 or kprime < 1:
        raise ValueError("k and kprime must be >= 1")
    n_vars = (1 << k) - 1
    max_vars = (1 << k) - k - 1
    base = (1 << kprime) - 1
    return sum(base**i * math.comb(n_vars, i) for i in range(max_vars + 1))


def rank_over_rationals(rows: Sequence[Sequence[Fraction]]) -> int:
    """Exact rank by fraction-free-ish Gaussian elimination on Fractions."""
    matrix = [list(map(Fraction, row)) for row in rows]
    if not matrix:
        return 0
    n_cols = len(matrix[0])
    rank = 0
    row = 0
    for col in range(n_cols):
        pivot = next((r for r in range(row, len(matrix)) if matrix[r][col] != 0), None)
        if pivot is None:
            continue
        matrix[row], matrix[pivot] = matrix[pivot], matrix[row]
        inv = matrix[row][col]
        for r in range(row + 1, len(matrix)):
            if matrix[r][col]:
                factor = matrix[r][col] / inv
                matrix[r] = [x - factor * y for x, y in zip(matrix[r], matrix[row])]
        rank += 1
        row += 1
        if row == len(matrix):
            break
    return rank


@dataclass
class IndependenceCertificate:
    set_size: int
    parity_ok: bool
    rank: int
    rank_ok: bool
    variable_cap: int
    variable_cap_ok: bool
    monomials_used: int
    monomial_bound: int
    bound_ok: bool
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.parity_ok and self.rank_ok and self.variable_cap_ok and self.bound_ok

    def to_json(self) -> dict:
        return {
            "set_size": self.set_size,
            "parity_ok": self.parity_ok,
            "rank": self.rank,
            "rank_ok": self.rank_ok,
            "variable_cap": self.variable_cap,
            "variable_cap_ok": self.variable_cap_ok,
            "monomials_used": self.monomials_used,
            "monomial_bound": str(self.monomial_bound),
            "bound_ok": self.bound_ok,
            "failures": self.failures,
            "ok": self.ok,
        }


def certify_independence(
    members: Sequence[HeqInput], basis_budget: int = DEFAULT_BASIS_BUDGET
) -> IndependenceCertificate:
    """Build the reduced membership products for a pairwise-condition set and
    certify: parity matrix is odd on the diagonal and even off it, the exact
    rational rank of the coefficient matrix equals the set size, the
    distinct-variable cap holds, and the set fits under the monomial bound.

    Check failures are recorded in the certificate (with the offending pair);
    a set violating the pairwise condition is a precondition error.
    """
    if not members:
        raise ValueError("empty set")
    params = members[0].params
    if any(m.params != params for m in members):
        raise ValueError("mismatched parameters in the set")
    if not condition_set_ok(list(members)):
        bad = _first_bad_pair(members)
        raise ValueError(f"set violates the pairwise condition at pair {bad}")

    bound = monomial_count_bound(params.k, params.kprime)
    if bound > basis_budget:
        raise BudgetExceededError("monomial basis", bound, basis_budget)

    cap = (1 << params.k) - params.k - 1
    failures = []

    reduced = []
    cap_ok = True
    for m in members:
        poly = build_membership_product(m)
        red = reduce_poly(poly, params.kprime)
        if max(poly.max_distinct_variables(), red.max_distinct_variables()) > cap:
            cap_ok = False
            failures.append(
                {"check": "variable-cap", "member": list(m.entries)}
            )
        reduced.append(red)

    parity_ok = True
    for i, fa in enumerate(reduced):
        for j, b in enumerate(members):
            point = {idx: b.entry(idx) for idx in range(1, params.length + 1)}
            value = fa.evaluate(point)
            if value.denominator != 1:
                parity_ok = False
                failures.append(
                    {
                        "check": "parity",
                        "pair": [list(members[i].entries), list(b.entries)],
                        "value": str(value),
                        "reason": "non-integer value on the grid",
                    }
                )
                continue
            want_odd = i == j
            if (value.numerator % 2 == 1) != want_odd:
                parity_ok = False
                failures.append(
                    {
                        "check": "parity",
                        "pair": [list(members[i].entries), list(b.entries)],
                        "value": str(value),
                        "reason": "wrong parity",
                    }
                )

    basis = sorted(set().union(*(p.monomials() for p in reduced)))
    rows = [[p.terms.get(m, Fraction(0)) for m in basis] for p in reduced]
    rank = rank_over_rationals(rows)
    rank_ok = rank == len(members)
    if not rank_ok:
        failures.append({"check": "rank", "rank": rank, "expected": len(members)})
    bound_ok = len(members) <= bound
    if not bound_ok:
        failures.append({"check": "size-bound", "size": len(members), "bound": str(bound)})

    return IndependenceCertificate(
        set_size=len(members),
        parity_ok=parity_ok,
        rank=rank,
        rank_ok=rank_ok,
        variable_cap=cap,
        variable_cap_ok=cap_ok,
        monomials_used=len(basis),
        monomial_bound=bound,
        bound_ok=bound_ok,
        failures=failures,
    )


def _first_bad_pair(members: Sequence[HeqInput]):
    from .cliques import pair_ok

    for i, a in enumerate(members):
        for b in members[i + 1 :]:
            if a.entries == b.entries or not pair_ok(a, b):
                return (list(a.entries), list(b.entries))
    return None
