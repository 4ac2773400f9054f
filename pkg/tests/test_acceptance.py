"""Acceptance suite: one criterion per test, one PASS/FAIL line per criterion.

Run with `pytest tests/test_acceptance.py -s` to see the lines.  Everything a
criterion decides on is exact (rational probabilities, integer counts); the
runtime ceilings are asserted with the same clock that is printed.
"""

import itertools
import time
from contextlib import contextmanager
from fractions import Fraction

from ndcomm import hadamard, heqfun, protocols
from ndcomm.boundslab import cliques, counting, polys
from ndcomm.cli import main as cli_main
from ndcomm.heqfun import HeqParams
from ndcomm.protocols import proof_space


@contextmanager
def criterion(number, description, limit_seconds=None):
    state = {"detail": ""}
    start = time.perf_counter()
    try:
        yield state
        elapsed = time.perf_counter() - start
        if limit_seconds is not None:
            assert elapsed < limit_seconds, (
                f"runtime {elapsed:.2f}s exceeds the {limit_seconds}s ceiling"
            )
    except BaseException:
        elapsed = time.perf_counter() - start
        print(f"criterion {number:2d} FAIL {description} [{elapsed:.2f}s]", flush=True)
        raise
    print(
        f"criterion {number:2d} PASS {description}"
        f"{' - ' + state['detail'] if state['detail'] else ''} [{elapsed:.2f}s]",
        flush=True,
    )


def test_criterion_01_quantum_exhaustive_k2():
    with criterion(
        1, "quantum protocol: exhaustive (2,1) and (2,2) sweeps, exact 0/1 decisions", 5
    ) as state:
        totals = []
        for params in (HeqParams(2, 1), HeqParams(2, 2)):
            report = protocols.verify_weak_nondeterminism(
                "quantum", params, heqfun.enumerate_instances(params, "exhaustive")
            )
            assert report.ok, report.failures[:3]
            assert report.instances_checked == heqfun.input_count(params) ** 2
            totals.append(report.instances_checked)
        # decision-point exactness, re-examined directly on the smaller sweep:
        # on 1-instances some guess has probability exactly 1, on 0-instances
        # every guess has probability exactly 0, and all of them are rationals
        params = HeqParams(2, 1)
        for a, b in heqfun.enumerate_instances(params, "exhaustive"):
            probs = [
                protocols.run_weak_nd_heq(a, b, proof).accept_probability
                for proof in proof_space(params)
            ]
            assert all(isinstance(p, Fraction) for p in probs)
            if heqfun.heq(a, b) == 1:
                assert Fraction(1) in probs
            else:
                assert probs == [Fraction(0)] * len(probs)
        state["detail"] = f"pairs swept: {totals[0]} and {totals[1]}"


def test_criterion_02_quantum_sampled_k3():
    with criterion(
        2, "quantum protocol: (3,3) with 10^4 planted samples x 5 guesses, cost 13 <= 17", 60
    ) as state:
        params = HeqParams(3, 3)
        assert len(proof_space(params)) == 5
        report = protocols.verify_weak_nondeterminism(
            "quantum",
            params,
            heqfun.enumerate_instances(params, "sample", count=10_000, seed=1),
        )
        assert report.ok, report.failures[:3]
        assert report.instances_checked == 10_000
        assert report.zero_instances >= 3_000  # planted third
        assert report.max_cost == 2 * (3 + 3) + 1 == 13
        assert report.max_cost <= 3 * (3 + 3) - 1
        state["detail"] = f"max cost {report.max_cost} qubits"


def test_criterion_03_classical_same_sweeps():
    with criterion(
        3, "classical protocol: same sweeps, zero failures, cost within 1+max(k+3k', kk')", 70
    ) as state:
        costs = []
        for params in (HeqParams(2, 1), HeqParams(2, 2)):
            report = protocols.verify_weak_nondeterminism(
                "classical", params, heqfun.enumerate_instances(params, "exhaustive")
            )
            assert report.ok, report.failures[:3]
            bound = 1 + max(params.k + 3 * params.kprime, params.k * params.kprime)
            assert report.max_cost <= bound
            costs.append(report.max_cost)
        params = HeqParams(3, 3)
        report = protocols.verify_weak_nondeterminism(
            "classical",
            params,
            heqfun.enumerate_instances(params, "sample", count=10_000, seed=1),
        )
        assert report.ok, report.failures[:3]
        assert report.max_cost <= 1 + max(3 + 9, 9)
        costs.append(report.max_cost)
        state["detail"] = f"max costs {costs} bits"


def test_criterion_04_strong_neq_exhaustive():
    with criterion(
        4, "one-qubit non-equality: exhaustive n <= 8, exact zero iff equal, cost 1", 10
    ) as state:
        for n in range(1, 9):
            report = protocols.verify_strong_nondeterminism(n)
            assert report.ok, report.failures[:3]
            assert report.max_cost == 1
            assert report.instances_checked == 1 << (2 * n)
        state["detail"] = "n = 1..8, 87380 pairs total"


def test_criterion_05_local_test_equivalence():
    with criterion(
        5, "local test == code membership for every vector with bit 0 clear, k <= 4", 5
    ) as state:
        checked = 0
        for k in range(1, 5):
            for rest in itertools.product((0, 1), repeat=(1 << k) - 1):
                x = (0,) + rest
                assert hadamard.local_test(x) == hadamard.is_codeword(x), x
                checked += 1
        state["detail"] = f"{checked} vectors"


def test_criterion_06_extremal_condition_sets():
    with criterion(
        6, "largest pairwise-condition sets: (2,1) = 2 and (2,2) matches exhaustive search", 120
    ) as state:
        res21 = cliques.max_condition_set(HeqParams(2, 1), "exact")
        assert res21.size == 2
        assert cliques.condition_set_ok(list(res21.witness))
        res22 = cliques.max_condition_set(HeqParams(2, 2), "exact")
        brute = cliques.max_condition_set_exhaustive(HeqParams(2, 2))
        assert res22.size == brute
        assert cliques.condition_set_ok(list(res22.witness))
        state["detail"] = f"sizes 2 and {res22.size}"


def test_criterion_07_polynomial_certificates():
    with criterion(
        7, "rank certificates for every pairwise-condition set at (2,1)", 60
    ) as state:
        count = 0
        for members in cliques.enumerate_condition_sets(HeqParams(2, 1)):
            cert = polys.certify_independence(list(members))
            assert cert.parity_ok, members
            assert cert.rank == len(members)
            assert cert.variable_cap_ok
            assert cert.ok
            count += 1
        assert count == 24
        state["detail"] = f"{count} sets certified"


def test_criterion_08_counting_inequalities():
    with criterion(
        8, "counting inequalities hold exactly for 3 <= k <= 8, k <= k' <= 12", 30
    ) as state:
        pairs = [(k, kp) for k in range(3, 9) for kp in range(k, 13)]
        report = counting.check_counting_inequalities(pairs)
        assert report.ok, report.violations[:3]
        checked = [c for c in report.cells if "checks" in c]
        assert len(checked) == len(pairs)
        state["detail"] = f"{len(checked)} cells, zero violations"


def test_criterion_09_quadratic_separation_table():
    with criterion(
        9, "bound table at k' = 2k: lower k^2 - 3k (quadratic) vs upper 9k (linear)", 10
    ) as state:
        rows = counting.bound_table([(k, 2 * k) for k in range(3, 21)])
        for row in rows:
            k = row["k"]
            assert row["classical_lower"] == k * k - 3 * k
            assert row["quantum_upper"] == 9 * k
            assert row["quadratic_separation_row"]
        # quadratic vs linear growth, verified on the reported numbers:
        # constant second difference 2 below, constant first difference 9 above
        lower = [row["classical_lower"] for row in rows]
        upper = [row["quantum_upper"] for row in rows]
        first = [b - a for a, b in zip(lower, lower[1:])]
        assert all(b - a == 2 for a, b in zip(first, first[1:]))
        assert all(b - a == 9 for a, b in zip(upper, upper[1:]))
        state["detail"] = "k = 3..20"


def test_criterion_10_seeded_runs_are_byte_identical(tmp_path):
    with criterion(
        10, "seeded commands produce byte-identical reports across two runs", 60
    ) as state:
        commands = [
            [
                "verify", "--protocol", "quantum-heq", "--k", "3", "--kprime", "3",
                "--mode", "sample", "--count", "2000", "--seed", "42",
            ],
            [
                "clique", "--k", "2", "--kprime", "2", "--mode", "heuristic",
                "--seed", "9", "--restarts", "8", "--steps", "128",
            ],
            ["verify", "--protocol", "neq", "--n", "6"],
        ]
        for idx, args in enumerate(commands):
            f1 = tmp_path / f"a{idx}.json"
            f2 = tmp_path / f"b{idx}.json"
            assert cli_main(args + ["--output", str(f1)]) == 0
            assert cli_main(args + ["--output", str(f2)]) == 0
            assert f1.read_bytes() == f2.read_bytes(), args
        state["detail"] = f"{len(commands)} commands, two runs each"
