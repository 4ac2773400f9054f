"""Request handlers: run the lab and produce canonical report dictionaries.

Reports embed the request config and the tool version, never wall-clock data,
so identical configs yield byte-identical reports; timing travels separately
in the response envelope.
"""

from __future__ import annotations

import os

from .. import VERSION_STRING, heqfun, protocols
from ..boundslab import cliques, counting, covers, polys
from ..heqfun import HeqInput, HeqParams
from ..ranges import parse_grid
from . import schemas


def resolve_threads(requested: int | None) -> int:
    if requested is not None:
        return requested
    env = os.environ.get("NDCOMM_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _report(command: str, config: dict, results: dict, failures: list) -> dict:
    return {
        "command": command,
        "config": config,
        "version": VERSION_STRING,
        "results": results,
        "failures": failures,
    }


def run_verify(req: schemas.VerifyRequest) -> dict:
    config = req.model_dump()
    if req.protocol == "neq":
        rep = protocols.verify_strong_nondeterminism(req.n)
    else:
        params = HeqParams(req.k, req.kprime)
        instances = heqfun.enumerate_instances(
            params, req.mode, count=req.count, seed=req.seed, pair_budget=req.pair_budget
        )
        rep = protocols.verify_weak_nondeterminism(
            "quantum" if req.protocol == "quantum-heq" else "classical",
            params,
            instances,
            threads=resolve_threads(req.threads),
        )
    results = rep.to_json()
    failures = results.pop("failures")
    return _report("verify", config, results, failures)


def run_bounds(req: schemas.BoundsRequest) -> dict:
    config = req.model_dump()
    cells = parse_grid(req.k, req.kprime)
    results: dict = {"table": counting.bound_table(cells)}
    failures: list = []
    if req.checks:
        counting_report = counting.check_counting_inequalities(
            cells, max_k=req.max_k, max_kprime=req.max_kprime
        )
        results["counting"] = counting_report.cells
        failures = counting_report.violations
    return _report("bounds", config, results, failures)


def _cover_domain(req: schemas.CoverRequest):
    if req.function == "heq":
        xs = list(heqfun.all_inputs(HeqParams(req.k, req.kprime)))
        return heqfun.heq, xs, xs, lambda v: list(v.entries)
    if req.function == "neq":
        xs = list(range(1 << req.n))
        return (lambda x, y: heqfun.neq(x, y, req.n)), xs, xs, lambda v: v
    xs = list(range(req.size))
    return (lambda x, y: 1), xs, xs, lambda v: v


def run_cover(req: schemas.CoverRequest) -> dict:
    config = req.model_dump()
    f, xs, ys, render = _cover_domain(req)
    res = covers.min_one_cover(f, xs, ys, req.target, pair_budget=req.pair_budget)
    results = {
        "size": res.size,
        "comm_lower_bound": res.comm_lower_bound,
        "maximal_rectangles": res.maximal_rectangles,
        "target_cells": res.target_cells,
        "witness": [
            {
                "rectangle_id": i,
                "a_members": [render(x) for x in a_members],
                "b_members": [render(y) for y in b_members],
            }
            for i, (a_members, b_members) in enumerate(res.witness.rectangles)
        ],
    }
    return _report("cover", config, results, [])


def run_clique(req: schemas.CliqueRequest) -> dict:
    config = req.model_dump()
    params = HeqParams(req.k, req.kprime)
    res = cliques.max_condition_set(
        params,
        mode=req.mode,
        seed=req.seed,
        restarts=req.restarts,
        steps=req.steps,
        vertex_budget=req.vertex_budget,
    )
    results = {
        "size": res.size,
        "mode": res.mode,
        "exact": res.exact,
        "witness": res.witness_entries(),
        "condition_verified": True,
    }
    if res.exact:
        # valid only for the true maximum: a heuristic witness would
        # understate the denominator and overstate the bound
        rect_bound = covers.diagonal_cover_lower_bound(params, res.size)
        results["diagonal_cover_lower_bound"] = str(rect_bound)
        results["comm_lower_bound"] = covers.ceil_log2(rect_bound)
    return _report("clique", config, results, [])


def run_polycheck(req: schemas.PolycheckRequest) -> dict:
    config = req.model_dump()
    params = HeqParams(req.k, req.kprime)
    if req.sets == "all-valid-sets":
        candidate_sets = list(cliques.enumerate_condition_sets(params, req.vertex_budget))
    elif req.sets == "clique-witness":
        best = cliques.max_condition_set(params, "exact", vertex_budget=req.vertex_budget)
        candidate_sets = [best.witness]
    else:
        candidate_sets = [
            tuple(HeqInput(params, tuple(entries)) for entries in one_set)
            for one_set in req.explicit_sets
        ]
    certificates = []
    failures = []
    for members in candidate_sets:
        cert = polys.certify_independence(members, basis_budget=req.basis_budget)
        record = {"set": [list(m.entries) for m in members], **cert.to_json()}
        certificates.append(record)
        if not cert.ok:
            failures.append(record)
    results = {
        "sets_checked": len(candidate_sets),
        "all_ok": not failures,
        "certificates": certificates,
    }
    return _report("polycheck", config, results, failures)
