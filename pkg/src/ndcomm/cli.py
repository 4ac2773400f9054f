"""Batch driver: every verifier and solver as a subcommand.

The CLI is a thin client of the HTTP service: it builds the same request
models, posts them (against the in-process application by default, or a
remote instance via --server), and writes the returned report as canonical
JSON - sorted keys, two-space indent, newline-terminated - so identical
configurations produce byte-identical report files.  Wall-clock duration and
diagnostics go to standard error, never into the report.

Exit status: 0 when the report's failure list is empty, 1 when it is not,
2 on usage, budget, or transport errors.
"""

from __future__ import annotations

import argparse
import asyncio
import csv
import json
import sys

import httpx

from . import VERSION_STRING
from .boundslab import cliques, covers, polys
from .heqfun import DEFAULT_PAIR_BUDGET


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


async def _post_async(path: str, payload: dict, server: str | None, timeout: float | None):
    if server is None:
        from .service.app import app

        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(
            transport=transport, base_url="http://ndcomm.local", timeout=timeout
        ) as client:
            return await client.post(path, json=payload)
    async with httpx.AsyncClient(base_url=server, timeout=timeout) as client:
        return await client.post(path, json=payload)


def post_request(path: str, payload: dict, server: str | None, timeout: float | None = None):
    return asyncio.run(_post_async(path, payload, server, timeout))


def _emit(args, response) -> int:
    if response.status_code != 200:
        try:
            detail = response.json().get("detail", response.text)
        except ValueError:
            detail = response.text
        print(f"error: {detail}", file=sys.stderr)
        return 2
    envelope = response.json()
    text = canonical_json(envelope["report"])
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write report: {exc}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(text)
    print(
        f"{envelope['report']['command']}: {envelope['failure_count']} failure(s), "
        f"{envelope['duration_seconds']:.3f}s",
        file=sys.stderr,
    )
    return 0 if envelope["failure_count"] == 0 else 1


def _write_cover_csv(report: dict, path: str):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["rectangle_id", "a_members", "b_members"])
        for rect in report["results"]["witness"]:
            writer.writerow(
                [
                    rect["rectangle_id"],
                    ";".join(json.dumps(m) for m in rect["a_members"]),
                    ";".join(json.dumps(m) for m in rect["b_members"]),
                ]
            )


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--output", help="write the report to this path (default: stdout)")
    parser.add_argument("--server", help="remote service URL (default: run in-process)")
    parser.add_argument(
        "--timeout", type=float, default=None, help="HTTP timeout in seconds (default: none)"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ndcomm", description="nondeterministic communication lab"
    )
    parser.add_argument("--version", action="version", version=VERSION_STRING)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("verify", help="check a protocol's nondeterminism contract")
    p.add_argument(
        "--protocol", required=True, choices=["quantum-heq", "classical-heq", "neq"]
    )
    p.add_argument("--k", type=int)
    p.add_argument("--kprime", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--mode", choices=["exhaustive", "diagonal", "sample"], default="exhaustive")
    p.add_argument("--count", type=int, help="sampled pair count (sample mode)")
    p.add_argument("--seed", type=int, help="sampling seed (mandatory in sample mode)")
    p.add_argument("--pair-budget", type=int, default=DEFAULT_PAIR_BUDGET)
    p.add_argument("--threads", type=int, help="worker cap (default: NDCOMM_THREADS or all cores)")
    _add_common(p)

    p = sub.add_parser("bounds", help="counting inequalities and the bound table")
    p.add_argument("--k", default="3..8", help="k range, e.g. 3..8")
    p.add_argument(
        "--kprime",
        "--kprime-rel",
        dest="kprime",
        default="k..12",
        help="kprime range, absolute or k-relative, e.g. k..12 or 2k",
    )
    p.add_argument(
        "--no-checks",
        action="store_true",
        help="table only; skip the counting-inequality checks (their budget does not apply)",
    )
    _add_common(p)

    p = sub.add_parser("cover", help="exact minimum 1-rectangle cover")
    p.add_argument("--function", required=True, choices=["heq", "neq", "const1"])
    p.add_argument("--k", type=int)
    p.add_argument("--kprime", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--size", type=int, help="const1 domain side")
    p.add_argument("--target", choices=["all-ones", "diagonal"], default="all-ones")
    p.add_argument("--pair-budget", type=int, default=covers.DEFAULT_PAIR_BUDGET)
    p.add_argument("--csv", help="also export the witness as CSV to this path")
    _add_common(p)

    p = sub.add_parser("clique", help="largest pairwise-condition set")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--kprime", type=int, required=True)
    p.add_argument("--mode", choices=["exact", "heuristic"], default="exact")
    p.add_argument("--seed", type=int, help="heuristic seed (mandatory in heuristic mode)")
    p.add_argument("--restarts", type=int, default=cliques.DEFAULT_HEURISTIC_RESTARTS)
    p.add_argument("--steps", type=int, default=cliques.DEFAULT_HEURISTIC_STEPS)
    p.add_argument("--vertex-budget", type=int, default=cliques.DEFAULT_VERTEX_BUDGET)
    _add_common(p)

    p = sub.add_parser("polycheck", help="polynomial-rank independence certificates")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--kprime", type=int, required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument(
        "--all-valid-sets", action="store_true", help="certify every pairwise-condition set"
    )
    group.add_argument(
        "--use-clique-witness", action="store_true", help="certify the exact maximum set"
    )
    group.add_argument(
        "--set",
        dest="explicit_set",
        action="append",
        help="JSON list of input vectors, e.g. '[[0,0,0],[1,0,0]]' (repeatable)",
    )
    p.add_argument("--basis-budget", type=int, default=polys.DEFAULT_BASIS_BUDGET)
    p.add_argument("--vertex-budget", type=int, default=cliques.DEFAULT_VERTEX_BUDGET)
    _add_common(p)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def _payload(args) -> tuple[str, dict]:
    if args.subcommand == "verify":
        return "/verify", {
            "protocol": args.protocol,
            "k": args.k,
            "kprime": args.kprime,
            "n": args.n,
            "mode": args.mode,
            "count": args.count,
            "seed": args.seed,
            "pair_budget": args.pair_budget,
            "threads": args.threads,
        }
    if args.subcommand == "bounds":
        return "/bounds", {
            "k": args.k,
            "kprime": args.kprime,
            "checks": not args.no_checks,
        }
    if args.subcommand == "cover":
        return "/cover", {
            "function": args.function,
            "k": args.k,
            "kprime": args.kprime,
            "n": args.n,
            "size": args.size,
            "target": args.target,
            "pair_budget": args.pair_budget,
        }
    if args.subcommand == "clique":
        return "/clique", {
            "k": args.k,
            "kprime": args.kprime,
            "mode": args.mode,
            "seed": args.seed,
            "restarts": args.restarts,
            "steps": args.steps,
            "vertex_budget": args.vertex_budget,
        }
    if args.subcommand == "polycheck":
        if args.explicit_set:
            sets_mode = "explicit"
            explicit = [json.loads(s) for s in args.explicit_set]
        elif args.use_clique_witness:
            sets_mode, explicit = "clique-witness", None
        else:
            sets_mode, explicit = "all-valid-sets", None
        return "/polycheck", {
            "k": args.k,
            "kprime": args.kprime,
            "sets": sets_mode,
            "explicit_sets": explicit,
            "basis_budget": args.basis_budget,
            "vertex_budget": args.vertex_budget,
        }
    raise AssertionError(f"unhandled subcommand {args.subcommand}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)

    if args.subcommand == "serve":
        import uvicorn

        from .service.app import app

        uvicorn.run(app, host=args.host, port=args.port)
        return 0

    path, payload = _payload(args)
    try:
        response = post_request(path, payload, args.server, args.timeout)
    except httpx.HTTPError as exc:
        print(f"transport error: {exc}", file=sys.stderr)
        return 2
    status = _emit(args, response)
    if status == 0 and args.subcommand == "cover" and args.csv:
        _write_cover_csv(response.json()["report"], args.csv)
    return status


if __name__ == "__main__":
    sys.exit(main())
