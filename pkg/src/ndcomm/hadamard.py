"""Hadamard code of length 2^k: encoding, membership, local testing, promise decoding.

The code is the set of inner-product vectors h(w), w in {0,1}^k, where bit i of
h(w) is the parity of w & i.  Index bits are little-endian throughout the
package: bit s of the integer i is (i >> s) & 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import PromiseViolationError

Bits = tuple[int, ...]


def floor_power_of_two(i: int) -> int:
    """Largest power of two <= i (defined for i >= 1)."""
    if i < 1:
        raise ValueError(f"index must be >= 1, got {i}")
    return 1 << (i.bit_length() - 1)


@lru_cache(maxsize=None)
def non_power_indices(k: int) -> Bits:
    """Indices in [1, 2^k - 1] that are not powers of two, ascending.

    There are exactly 2^k - k - 1 of them; empty for k = 1.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return tuple(i for i in range(1, 1 << k) if i & (i - 1))


def _parity(x: int) -> int:
    return x.bit_count() & 1


def _as_bits(x: Iterable[int]) -> Bits:
    bits = tuple(int(b) for b in x)
    if any(b not in (0, 1) for b in bits):
        raise ValueError("expected a 0/1 vector")
    return bits


@dataclass(frozen=True)
class Codeword:
    """A member of the length-2^k Hadamard code, tagged with its parameter k."""

    k: int
    bits: Bits

    def __post_init__(self):
        if len(self.bits) != 1 << self.k:
            raise ValueError(f"codeword for k={self.k} must have length {1 << self.k}")

    def __str__(self) -> str:
        return bits_to_string(self.bits)


def encode(w: Sequence[int]) -> Codeword:
    """Encode a k-bit vector w into the 2^k-bit vector with bit i = parity(w & i)."""
    wbits = _as_bits(w)
    k = len(wbits)
    if k < 1:
        raise ValueError("cannot encode the empty vector (k must be >= 1)")
    mask = sum(b << s for s, b in enumerate(wbits))
    return Codeword(k, tuple(_parity(mask & i) for i in range(1 << k)))


@lru_cache(maxsize=None)
def codewords(k: int) -> tuple[Codeword, ...]:
    """All 2^k codewords, ordered by the integer value of w."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return tuple(
        encode(tuple((w >> s) & 1 for s in range(k))) for w in range(1 << k)
    )


@lru_cache(maxsize=None)
def _codeword_bitsets(k: int) -> frozenset[Bits]:
    return frozenset(c.bits for c in codewords(k))


def _k_from_length(n: int) -> int:
    if n < 2 or n & (n - 1):
        raise ValueError(f"length must be a power of two >= 2, got {n}")
    return n.bit_length() - 1


def is_codeword(x: Sequence[int]) -> bool:
    """Membership by exhaustive comparison against all 2^k codewords."""
    bits = _as_bits(x)
    k = _k_from_length(len(bits))
    return bits in _codeword_bitsets(k)


def local_test(x: Sequence[int]) -> bool:
    """Check x_i == x_[i] xor x_(i-[i]) at every non-power index.

    Requires x_0 == 0.  For vectors with x_0 == 0 this is equivalent to code
    membership; for k = 1 the index set is empty and the test is vacuously true.
    """
    bits = _as_bits(x)
    k = _k_from_length(len(bits))
    if bits[0] != 0:
        raise ValueError("local test requires bit 0 to be 0")
    for i in non_power_indices(k):
        top = floor_power_of_two(i)
        if bits[i] != bits[top] ^ bits[i - top]:
            return False
    return True


def promise_decode(x: Sequence[int]) -> Bits:
    """Recover w from a vector promised to be a codeword: w_s = x_(2^s).

    Raises PromiseViolationError when the promise does not hold.
    """
    bits = _as_bits(x)
    k = _k_from_length(len(bits))
    w = tuple(bits[1 << s] for s in range(k))
    if encode(w).bits != bits:
        raise PromiseViolationError(
            f"{bits_to_string(bits)} is not a Hadamard codeword"
        )
    return w


def bits_to_string(bits: Sequence[int]) -> str:
    """Serialize a bit vector as '0'/'1' characters, index 0 leftmost."""
    return "".join(str(int(b)) for b in bits)


def bits_from_string(s: str) -> Bits:
    if set(s) - {"0", "1"}:
        raise ValueError(f"invalid bit string {s!r}")
    return tuple(int(c) for c in s)
