"""Two-party protocols with exact communication accounting and their verifiers.

Three protocols live here:

* a weakly nondeterministic quantum protocol for the Hadamard equality game
  (guess = either "the inputs are equal" or "local test fails at index j";
  the equality branch ships the indexed superposition both ways and finishes
  with a Hadamard layer and a first-register measurement),
* its classical counterpart (the equality branch sends the k entries at the
  power-of-two positions instead of a quantum register),
* the strongly nondeterministic one-qubit protocol for non-equality of two
  n-bit integers (rotation by x*pi/2^n, counter-rotation by -y*pi/2^n).

Acceptance probabilities of the equality-game protocols are exact rationals;
verification checks the weak-nondeterminism contract literally: some guess
accepted with probability exactly 1 on every 1-instance, every guess rejected
with probability exactly 1 on every 0-instance.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import qsim
from .errors import BudgetExceededError, ProofError
from .hadamard import floor_power_of_two, non_power_indices
from .heqfun import HeqInput, HeqParams, delta, heq, instance_to_json, neq

BRANCH_EQUALITY = "equality"
BRANCH_INDEX = "index"

ALICE = "alice"
BOB = "bob"

STRONG_NEQ_BUDGET_N = 10


@dataclass(frozen=True)
class Proof:
    """A nondeterministic guess: the branch, plus the index j for the index branch.

    Bob's private part is empty (reserved); the protocols give him nothing to
    guess.
    """

    branch: str
    j: int | None = None
    bob_part: str = ""

    def label(self) -> str:
        return self.branch if self.j is None else f"{self.branch}:{self.j}"


def proof_space(params: HeqParams) -> tuple[Proof, ...]:
    """All guesses for the given parameters: the equality branch plus one index
    branch per non-power index (so 1 + (2^k - k - 1) proofs; just the equality
    branch when k = 1)."""
    return (Proof(BRANCH_EQUALITY),) + tuple(
        Proof(BRANCH_INDEX, j) for j in non_power_indices(params.k)
    )


def _validate_proof(proof: Proof, params: HeqParams):
    if proof.branch == BRANCH_EQUALITY:
        if proof.j is not None:
            raise ProofError("equality branch carries no index")
    elif proof.branch == BRANCH_INDEX:
        if proof.j not in non_power_indices(params.k):
            raise ProofError(f"index {proof.j} is not a non-power index for k={params.k}")
    else:
        raise ProofError(f"unknown branch {proof.branch!r}")


@dataclass(frozen=True)
class Message:
    kind: str  # "classical" | "quantum"
    sender: str
    size: int  # bits for classical, qubits for quantum
    payload: object = None

    def __post_init__(self):
        if self.kind == "classical" and isinstance(self.payload, str):
            assert self.size == len(self.payload)
        if self.kind == "quantum" and isinstance(self.payload, qsim.DyadicState):
            assert self.size == self.payload.qubits


@dataclass(frozen=True)
class Transcript:
    """One protocol run: ordered messages, the certified output, and the exact
    acceptance probability.

    `output` is 1 only when acceptance is certain (probability exactly 1);
    `accept_exactly_zero` is decided exactly even for the rotation protocol,
    whose probability field is a float.
    """

    messages: tuple[Message, ...]
    output: int
    output_party: str
    accept_probability: Fraction | float
    accept_exactly_zero: bool

    def __post_init__(self):
        assert 0 <= self.accept_probability <= 1

    @property
    def total_cost(self) -> int:
        return sum(m.size for m in self.messages)


def _bitstring(value: int, width: int) -> str:
    return "".join(str((value >> s) & 1) for s in range(width))


def _index_branch_messages(a: HeqInput, j: int) -> tuple[Message, ...]:
    k, kprime = a.params.k, a.params.kprime
    top = floor_power_of_two(j)
    payload = (
        "1"
        + _bitstring(j, k)
        + _bitstring(a.entry(j), kprime)
        + _bitstring(a.entry(top), kprime)
        + _bitstring(a.entry(j - top), kprime)
    )
    return (Message("classical", ALICE, len(payload), payload),)


def _index_branch_decision(a: HeqInput, b: HeqInput, j: int) -> int:
    top = floor_power_of_two(j)
    lhs = delta(a.entry(j), b.entry(j))
    rhs = delta(a.entry(top), b.entry(top)) ^ delta(a.entry(j - top), b.entry(j - top))
    return int(lhs != rhs)


def run_weak_nd_heq(a: HeqInput, b: HeqInput, proof: Proof) -> Transcript:
    """Run the quantum protocol on one instance under one guess.

    Index branch: one classical message of 1 + k + 3*kprime bits, Bob decides.
    Equality branch: branch bit, the (k + kprime)-qubit register to Bob, the
    phase-flipped register back, then Alice uncomputes, applies the Hadamard
    layer and accepts on first-register outcome 0; cost 1 + 2(k + kprime).
    """
    if a.params != b.params:
        raise ValueError("mismatched parameters")
    params = a.params
    _validate_proof(proof, params)

    if proof.branch == BRANCH_INDEX:
        messages = _index_branch_messages(a, proof.j)
        out = _index_branch_decision(a, b, proof.j)
        prob = Fraction(out)
        return Transcript(messages, out, BOB, prob, prob == 0)

    state = qsim.prepare_indexed_superposition(a)
    flipped = qsim.phase_flip(state, b)
    final = qsim.hadamard_first_register(qsim.xor_second_register(flipped, a))
    prob = qsim.outcome_probability(final, 0)
    messages = (
        Message("classical", ALICE, 1, "0"),
        Message("quantum", ALICE, state.qubits, state),
        Message("quantum", BOB, flipped.qubits, flipped),
    )
    return Transcript(messages, int(prob == 1), ALICE, prob, prob == 0)


def run_classical_nd_heq(a: HeqInput, b: HeqInput, proof: Proof) -> Transcript:
    """Run the classical protocol: index branch as above; equality branch sends
    the k entries at the power-of-two positions (1 + k*kprime bits) and Bob
    accepts iff all of them match."""
    if a.params != b.params:
        raise ValueError("mismatched parameters")
    params = a.params
    _validate_proof(proof, params)

    if proof.branch == BRANCH_INDEX:
        messages = _index_branch_messages(a, proof.j)
        out = _index_branch_decision(a, b, proof.j)
        prob = Fraction(out)
        return Transcript(messages, out, BOB, prob, prob == 0)

    k, kprime = params.k, params.kprime
    payload = "0" + "".join(_bitstring(a.entry(1 << s), kprime) for s in range(k))
    messages = (Message("classical", ALICE, len(payload), payload),)
    out = int(all(a.entry(1 << s) == b.entry(1 << s) for s in range(k)))
    prob = Fraction(out)
    return Transcript(messages, out, BOB, prob, prob == 0)


def run_strong_nd_neq(x: int, y: int, n: int) -> Transcript:
    """One-qubit protocol for non-equality: accept probability sin^2((x-y)pi/2^n),
    exactly zero iff x == y."""
    exact_zero, prob = qsim.neq_accept_probability(x, y, n)
    state = qsim.RotationState.from_scaled_integer(x, n)
    messages = (Message("quantum", ALICE, 1, state),)
    return Transcript(messages, int(not exact_zero), BOB, prob, exact_zero)


PROTOCOL_RUNNERS = {
    "quantum": run_weak_nd_heq,
    "classical": run_classical_nd_heq,
}


@dataclass
class VerificationReport:
    """Outcome of sweeping a protocol over an instance set.

    An empty failure list certifies the nondeterminism contract on exactly the
    instances checked, nothing more.
    """

    protocol: str
    params: dict
    proof_space_size: int | None
    instances_checked: int
    one_instances: int
    zero_instances: int
    max_cost: int
    failures: list = field(default_factory=list)
    min_nonzero_probability: float | None = None

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        reasons = {f.get("reason") for f in self.failures}
        out = {
            "protocol": self.protocol,
            "params": self.params,
            "proof_space_size": self.proof_space_size,
            "instances_checked": self.instances_checked,
            "one_instances": self.one_instances,
            "zero_instances": self.zero_instances,
            "ones_all_witnessed": "no guess accepted with probability 1" not in reasons,
            "zeros_all_rejected": "a guess accepted a 0-instance" not in reasons,
            "max_cost": self.max_cost,
            "failures": self.failures,
        }
        if self.min_nonzero_probability is not None:
            out["min_nonzero_probability"] = self.min_nonzero_probability
        return out


def _check_weak_instance(
    runner, a: HeqInput, b: HeqInput, proofs: Sequence[Proof]
) -> tuple[int, int, list]:
    """Returns (f value, max cost over proofs, failure records)."""
    fval = heq(a, b)
    probs = {}
    max_cost = 0
    for proof in proofs:
        t = runner(a, b, proof)
        probs[proof.label()] = t.accept_probability
        max_cost = max(max_cost, t.total_cost)
    failures = []
    if fval == 1:
        if not any(p == 1 for p in probs.values()):
            failures.append(_weak_failure(a, b, fval, probs, "no guess accepted with probability 1"))
    else:
        if any(p != 0 for p in probs.values()):
            failures.append(_weak_failure(a, b, fval, probs, "a guess accepted a 0-instance"))
    return fval, max_cost, failures


def _weak_failure(a, b, fval, probs, reason) -> dict:
    return {
        "instance": instance_to_json(a, b),
        "f": fval,
        "probabilities": {label: str(p) for label, p in sorted(probs.items())},
        "reason": reason,
    }


def _weak_chunk_worker(args) -> tuple[int, int, int, list]:
    protocol, chunk = args
    runner = PROTOCOL_RUNNERS[protocol]
    ones = zeros = max_cost = 0
    failures = []
    for a, b in chunk:
        proofs = proof_space(a.params)
        fval, cost, fails = _check_weak_instance(runner, a, b, proofs)
        ones += fval
        zeros += 1 - fval
        max_cost = max(max_cost, cost)
        failures.extend(fails)
    return ones, zeros, max_cost, failures


def _instance_sort_key(record: dict) -> tuple:
    inst = record["instance"]
    return (tuple(inst["a"]), tuple(inst["b"]))


def verify_weak_nondeterminism(
    protocol: str,
    params: HeqParams,
    instances: Iterable[tuple[HeqInput, HeqInput]],
    threads: int = 1,
) -> VerificationReport:
    """Sweep every guess over every instance and check the weak contract.

    Failures are collected (not raised) and sorted by instance encoding so the
    report is deterministic regardless of worker count.
    """
    if protocol not in PROTOCOL_RUNNERS:
        raise ValueError(f"unknown protocol {protocol!r}")
    pairs = list(instances)
    proofs = proof_space(params)

    if threads > 1 and len(pairs) > 1:
        chunk_size = max(1, math.ceil(len(pairs) / threads))
        chunks = [pairs[i : i + chunk_size] for i in range(0, len(pairs), chunk_size)]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_weak_chunk_worker, [(protocol, c) for c in chunks]))
    else:
        parts = [_weak_chunk_worker((protocol, pairs))]

    ones = sum(p[0] for p in parts)
    zeros = sum(p[1] for p in parts)
    max_cost = max((p[2] for p in parts), default=0)
    failures = sorted((f for p in parts for f in p[3]), key=_instance_sort_key)
    return VerificationReport(
        protocol=protocol,
        params={"k": params.k, "kprime": params.kprime},
        proof_space_size=len(proofs),
        instances_checked=len(pairs),
        one_instances=ones,
        zero_instances=zeros,
        max_cost=max_cost,
        failures=failures,
    )


def verify_strong_nondeterminism(n: int, budget_n: int = STRONG_NEQ_BUDGET_N) -> VerificationReport:
    """Exhaustively check the one-qubit protocol over all 4^n input pairs:
    acceptance is exactly zero iff x == y, every nonzero probability is at
    least sin^2(pi/2^n), and every transcript costs exactly one qubit."""
    if n > budget_n:
        raise BudgetExceededError("non-equality sweep width n", n, budget_n)
    floor = math.sin(math.pi / (1 << n)) ** 2
    ones = zeros = 0
    max_cost = 0
    min_nonzero = None
    failures = []
    for x in range(1 << n):
        for y in range(1 << n):
            fval = neq(x, y, n)
            t = run_strong_nd_neq(x, y, n)
            max_cost = max(max_cost, t.total_cost)
            ones += fval
            zeros += 1 - fval
            bad = None
            if t.total_cost != 1:
                bad = "cost is not one qubit"
            elif fval == 0 and not t.accept_exactly_zero:
                bad = "equal inputs not rejected exactly"
            elif fval == 1 and t.accept_exactly_zero:
                bad = "distinct inputs rejected exactly"
            elif fval == 1 and t.accept_probability < floor:
                bad = "acceptance probability below the one-step floor"
            if fval == 1:
                p = t.accept_probability
                min_nonzero = p if min_nonzero is None else min(min_nonzero, p)
            if bad:
                failures.append(
                    {"x": x, "y": y, "f": fval, "probability": t.accept_probability, "reason": bad}
                )
    return VerificationReport(
        protocol="neq",
        params={"n": n},
        proof_space_size=None,
        instances_checked=1 << (2 * n),
        one_instances=ones,
        zero_instances=zeros,
        max_cost=max_cost,
        failures=failures,
        min_nonzero_probability=min_nonzero,
    )
