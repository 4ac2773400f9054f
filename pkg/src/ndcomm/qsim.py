"""Exact state-vector simulation of the two-register quantum messages.

Amplitudes are stored as integers over a global scale: amplitude(m, r) =
z(m, r) / sqrt(2^s).  Every gate the protocols use (basis-state preparation,
+-1 phases, XOR permutations, Hadamard layers) maps integer tables to integer
tables, so measurement probabilities come out as exact rationals and
"probability exactly 0 or exactly 1" is decidable, which floating point could
never certify.

The one-qubit rotation used by the non-equality protocol keeps its angle as an
exact rational multiple of pi; only the reported probability is a float, the
zero-vs-nonzero decision is made on the rational.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .heqfun import HeqInput


@dataclass(frozen=True)
class DyadicState:
    """State on a k-qubit and a kprime-qubit register with dyadic amplitudes.

    amps[(m << kprime) | r] is the integer z(m, r); the amplitude is
    z(m, r) / sqrt(2^scale).  Normalization means sum of z^2 == 2^scale.
    """

    k: int
    kprime: int
    amps: tuple[int, ...]
    scale: int

    def __post_init__(self):
        if len(self.amps) != 1 << (self.k + self.kprime):
            raise ValueError("amplitude table has the wrong size")
        if self.scale < 0:
            raise ValueError("scale must be nonnegative")

    @property
    def qubits(self) -> int:
        return self.k + self.kprime

    def amplitude_numerator(self, m: int, r: int) -> int:
        return self.amps[(m << self.kprime) | r]

    def norm_squared_numerator(self) -> int:
        return sum(z * z for z in self.amps)

    def is_normalized(self) -> bool:
        return self.norm_squared_numerator() == 1 << self.scale

    def to_json(self) -> dict:
        return {"k": self.k, "kprime": self.kprime, "scale": self.scale, "amps": list(self.amps)}


def _check_dims(state: DyadicState, v: HeqInput):
    if v.params.k != state.k or v.params.kprime != state.kprime:
        raise ValueError(
            f"dimension mismatch: state ({state.k},{state.kprime}) vs input {v.params}"
        )


def prepare_indexed_superposition(a: HeqInput) -> DyadicState:
    """Uniform superposition over m of |m>|a_m>, with the convention a_0 = 0."""
    k, kprime = a.params.k, a.params.kprime
    amps = [0] * (1 << (k + kprime))
    for m in range(1 << k):
        amps[(m << kprime) | a.entry(m)] = 1
    return DyadicState(k, kprime, tuple(amps), k)


def phase_flip(state: DyadicState, b: HeqInput) -> DyadicState:
    """Multiply |m>|r> by -1 wherever r != b_m (b_0 = 0); scale unchanged."""
    _check_dims(state, b)
    amps = list(state.amps)
    for m in range(1 << state.k):
        keep = b.entry(m)
        base = m << state.kprime
        for r in range(1 << state.kprime):
            if r != keep:
                amps[base | r] = -amps[base | r]
    return DyadicState(state.k, state.kprime, tuple(amps), state.scale)


def xor_second_register(state: DyadicState, a: HeqInput) -> DyadicState:
    """Permute |m>|r> to |m>|r xor a_m> (a_0 = 0)."""
    _check_dims(state, a)
    amps = [0] * len(state.amps)
    for m in range(1 << state.k):
        mask = a.entry(m)
        base = m << state.kprime
        for r in range(1 << state.kprime):
            amps[base | (r ^ mask)] = state.amps[base | r]
    return DyadicState(state.k, state.kprime, tuple(amps), state.scale)


def hadamard_first_register(state: DyadicState) -> DyadicState:
    """Hadamard on each qubit of the first register: z'(c,r) = sum_m (-1)^(m.c) z(m,r).

    Implemented as an in-place Walsh butterfly over the m index for every r
    column; the scale grows by one per qubit, i.e. by k.
    """
    k, kprime = state.k, state.kprime
    amps = list(state.amps)
    cols = 1 << kprime
    half = 1
    while half < 1 << k:
        step = half << 1
        for m0 in range(0, 1 << k, step):
            for m in range(m0, m0 + half):
                for r in range(cols):
                    i = (m << kprime) | r
                    j = ((m + half) << kprime) | r
                    x, y = amps[i], amps[j]
                    amps[i] = x + y
                    amps[j] = x - y
        half = step
    return DyadicState(k, kprime, tuple(amps), state.scale + k)


def outcome_probability(state: DyadicState, c: int) -> Fraction:
    """Exact probability that measuring the first register yields c."""
    if not 0 <= c < 1 << state.k:
        raise ValueError(f"outcome {c} out of range for {state.k} qubits")
    base = c << state.kprime
    num = sum(state.amps[base | r] ** 2 for r in range(1 << state.kprime))
    return Fraction(num, 1 << state.scale)


@dataclass(frozen=True)
class RotationState:
    """One qubit cos(t*pi)|0> + sin(t*pi)|1> with t kept as an exact rational."""

    pi_multiple: Fraction

    @classmethod
    def from_scaled_integer(cls, x: int, n: int) -> "RotationState":
        """State for the angle x*pi/2^n."""
        return cls(Fraction(x, 1 << n))

    def rotate(self, pi_multiple_delta: Fraction) -> "RotationState":
        return RotationState(self.pi_multiple + pi_multiple_delta)

    @property
    def one_amplitude_is_zero(self) -> bool:
        """sin(t*pi) == 0, decided exactly: t is an integer."""
        return self.pi_multiple.denominator == 1

    def one_probability(self) -> float:
        """sin^2(t*pi), computed on the angle folded into [0, 1/2] so that
        equal probabilities are equal floats."""
        if self.one_amplitude_is_zero:
            return 0.0
        t = self.pi_multiple % 1
        if t > Fraction(1, 2):
            t = 1 - t
        return math.sin(math.pi * float(t)) ** 2


def neq_accept_probability(x: int, y: int, n: int) -> tuple[bool, float]:
    """(exactly-zero flag, sin^2((x - y) pi / 2^n)) for n-bit x and y.

    The flag is decided on the rational angle and is true iff x == y.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not (0 <= x < 1 << n and 0 <= y < 1 << n):
        raise ValueError(f"inputs must lie in [0, 2^{n}), got {x}, {y}")
    state = RotationState.from_scaled_integer(x, n).rotate(Fraction(-y, 1 << n))
    return state.one_amplitude_is_zero, state.one_probability()
