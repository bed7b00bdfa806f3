"""Command-line front end.

Exit codes: 0 success, 2 parse or parameter error, 3 domain error (e.g. the
graph is not outerplanar), 4 size cap exceeded.
"""
from __future__ import annotations

import argparse
import json
import logging
import statistics
import sys
import time
from pathlib import Path

from . import fileio
from .errors import InputError, PmrError
from .graph import ReconfigSequence

EXIT_OK, EXIT_INPUT, EXIT_DOMAIN, EXIT_SIZE = 0, 2, 3, 4


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _dump_json(doc, out):
    _emit(json.dumps(doc, indent=2) + "\n", out)


def cmd_solve(args) -> int:
    from .solver import solve

    inst = fileio.parse_instance(_read(args.path))
    t0 = time.perf_counter()
    report = solve(inst, domain=args.domain, value_only=args.value_only)
    elapsed = time.perf_counter() - t0
    if args.seed_check and report.sequence is not None:
        seq = report.sequence
        replay = ReconfigSequence.from_cycles(inst.graph, inst.m, seq.cycles)
        if not replay.validate(inst.graph, inst.m, inst.n) or len(seq.cycles) != report.opt:
            raise PmrError("sequence failed re-validation")
    _dump_json(fileio.result_document(report, {"solve_s": round(elapsed, 6)}), args.out)
    return EXIT_OK


def cmd_oracle(args) -> int:
    from .oracle import bfs_shortest

    inst = fileio.parse_instance(_read(args.path))
    t0 = time.perf_counter()
    opt, seq = bfs_shortest(inst.graph, inst.m, inst.n, cap=args.cap)
    doc = {
        "opt": opt,
        "blocks": [],
        "cycles": [sorted(c) for c in seq.cycles],
        "matchings": [sorted(x) for x in seq.matchings],
        "timings": {"bfs_s": round(time.perf_counter() - t0, 6)},
    }
    _dump_json(doc, args.out)
    return EXIT_OK


def cmd_gen(args) -> int:
    from . import reductions
    from .instances import random_outerplanar_instance
    from .msdd import random_tree_instance

    if args.kind == "outerplanar":
        inst = random_outerplanar_instance(args.n, args.density, args.seed, parallel=args.parallel)
        text = fileio.render_instance(
            inst, f"outerplanar n={args.n} density={args.density} parallel={args.parallel} seed={args.seed}"
        )
    elif args.kind == "msdd-tree":
        text = fileio.render_tree(random_tree_instance(args.n, args.max_length, args.p_deletable, args.seed))
    else:
        if not args.input:
            raise InputError(f"{args.kind} needs --input")
        src = _read(args.input)
        if args.kind == "reduce-planar-hc":
            red = reductions.reduce_planar(fileio.parse_graph(src))
        else:
            red = reductions.reduce_bipartite(fileio.parse_digraph(src))
        text = fileio.render_instance(red.instance, f"{args.kind} of {Path(args.input).name}")
    _emit(text, args.out)
    return EXIT_OK


def cmd_msdd(args) -> int:
    from .msdd import solve_msdd, solve_msdd_bruteforce

    inst = fileio.parse_tree(_read(args.path))
    sol = solve_msdd(inst, domain=args.domain)
    doc = {"objective": sol.objective, "F": sorted(sol.deleted)}
    if args.brute:
        brute = solve_msdd_bruteforce(inst)
        doc["brute_objective"] = brute.objective
        doc["agree"] = brute.objective == sol.objective
    _dump_json(doc, args.out)
    return EXIT_OK if doc.get("agree", True) else 1


def _csv(kind):
    def parse(text):
        if not text.strip():
            return []
        try:
            return [kind(x) for x in text.split(",")]
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad list {text!r}") from None

    return parse


def _bench_one(job):
    from .instances import random_outerplanar_instance
    from .oracle import bfs_shortest
    from .solver import opt_value_only, solve

    n, density, seed, oracle_max_n = job
    inst = random_outerplanar_instance(n, density, seed)
    t0 = time.perf_counter()
    if n > oracle_max_n:
        opt, gaps, agree = opt_value_only(inst), [], None
        elapsed = time.perf_counter() - t0
    else:
        rep = solve(inst)
        elapsed = time.perf_counter() - t0
        opt = rep.opt
        gaps = [b.gap for b in rep.blocks if b.gap is not None]
        agree = bfs_shortest(inst.graph, inst.m, inst.n)[0] == opt
    return {"n": n, "density": density, "seed": seed, "opt": opt, "seconds": elapsed, "gaps": gaps, "agree": agree}


def run_bench(sizes, densities, seeds: int, oracle_max_n: int = 14, jobs: int = 1) -> dict:
    """Per-size runtimes, block gap statistics and oracle agreement counts."""
    work = [(n, d, s, oracle_max_n) for n in sizes for d in densities for s in range(seeds)]
    if jobs > 1 and work:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(jobs) as pool:
            rows = list(pool.map(_bench_one, work))
    else:
        rows = [_bench_one(w) for w in work]
    report = {}
    for n in sizes:
        sel = [r for r in rows if r["n"] == n]
        if not sel:
            continue
        gaps = [g for r in sel for g in r["gaps"]]
        checked = [r for r in sel if r["agree"] is not None]
        report[str(n)] = {
            "instances": len(sel),
            "median_seconds": statistics.median(r["seconds"] for r in sel),
            "max_seconds": max(r["seconds"] for r in sel),
            "mean_opt": statistics.fmean(r["opt"] for r in sel),
            "block_gap_mean": statistics.fmean(gaps) if gaps else None,
            "block_gap_max": max(gaps) if gaps else None,
            "oracle_checked": len(checked),
            "oracle_agree": sum(r["agree"] for r in checked),
        }
    return report


def cmd_bench(args) -> int:
    report = run_bench(args.sizes, args.densities, args.seeds, args.oracle_max_n, args.jobs)
    _dump_json(report, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pmreconf", description="Shortest perfect matching reconfiguration tools.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="exact optimum and sequence on an outerplanar instance")
    s.add_argument("path")
    s.add_argument("--value-only", action="store_true", help="skip sequence construction")
    s.add_argument("--out", help="write the JSON result here instead of stdout")
    s.add_argument("--seed-check", action="store_true", help="replay and re-validate the sequence")
    s.add_argument("--domain", choices=("full", "restricted"), default="full")
    s.set_defaults(func=cmd_solve)

    o = sub.add_parser("oracle", help="breadth-first search over perfect matchings")
    o.add_argument("path")
    o.add_argument("--cap", type=int, default=200_000, help="max matchings visited")
    o.add_argument("--out")
    o.set_defaults(func=cmd_oracle)

    g = sub.add_parser("gen", help="write a generated instance")
    g.add_argument("kind", choices=("outerplanar", "reduce-planar-hc", "reduce-bipartite-dhc", "msdd-tree"))
    g.add_argument("--n", type=int, default=12)
    g.add_argument("--density", type=float, default=0.3)
    g.add_argument("--parallel", type=float, default=0.0)
    g.add_argument("--max-length", type=int, default=2)
    g.add_argument("--p-deletable", type=float, default=0.5)
    g.add_argument("--input", help="graph or digraph file for the reductions")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    t = sub.add_parser("msdd", help="min-sum diameter decomposition of a tree file")
    t.add_argument("path")
    t.add_argument("--brute", action="store_true", help="cross-check against exhaustive search")
    t.add_argument("--domain", choices=("full", "restricted"), default="full")
    t.add_argument("--out")
    t.set_defaults(func=cmd_msdd)

    b = sub.add_parser("bench", help="timing and oracle-agreement suite")
    b.add_argument("--sizes", type=_csv(int), default=[8, 10, 12, 14])
    b.add_argument("--densities", type=_csv(float), default=[0.0, 0.3, 0.7])
    b.add_argument("--seeds", type=int, default=10)
    b.add_argument("--oracle-max-n", type=int, default=14)
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("--out")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except PmrError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
