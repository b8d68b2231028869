"""Command-line front end: solve, exact, bench, gen, convert."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .core import is_valid
from .errors import DuomapError, InstanceTooLarge, SizeGuardExceeded
from .instances import (
    CSV_FIELDS,
    FORMAT_VERSION,
    MPSMInstance,
    as_graph,
    extract_letter_mapping,
    gen_mcsp_instance,
    gen_random_graph,
    gen_staircase_graph,
    load_instance,
    mcsp_pieces,
    report_dict,
    serialize_instance,
)
from .oracle import DEFAULT_CAP, exact_opt
from .pipelines import ALGORITHMS, DEFAULT_BUDGET, run_algorithm

EXIT_ERROR = 1
EXIT_TOO_LARGE = 3
EXIT_BUDGET = 4


def _epsilon(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError("epsilon must be positive")
    return value


def _algorithms(values: list[str] | None, default: list[str]) -> list[str]:
    if values is None:
        return list(default)
    names = [name.strip() for v in values for name in v.split(",") if name.strip()]
    for name in names:
        if name not in ALGORITHMS:
            raise SystemExit(f"duomap: unknown algorithm {name!r}; choose from {', '.join(ALGORITHMS)}")
    return names


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="duomap", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run one approximation pipeline on an instance file")
    p.add_argument("instance")
    p.add_argument("--algorithm", choices=ALGORITHMS, default="approx267")
    p.add_argument("--epsilon", type=_epsilon)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    p = sub.add_parser("exact", help="maximum solution by exhaustive search")
    p.add_argument("instance")
    p.add_argument("--oracle-cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("convert", help="solve a string instance and report the letter mapping")
    p.add_argument("instance")
    p.add_argument("--algorithm", choices=(*ALGORITHMS, "exact"), default="approx267")
    p.add_argument("--epsilon", type=_epsilon)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--oracle-cap", type=int, default=DEFAULT_CAP)

    for name, helptext in (("gen", "write a generated instance"), ("bench", "run a seeded sweep to CSV")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--generator", choices=("mcsp", "random", "staircase"), default="mcsp")
        p.add_argument("--n", type=int, default=12)
        p.add_argument("--blocks", type=int, default=4)
        p.add_argument("--sigma", type=int, default=2)
        p.add_argument("--p", type=float, default=0.2)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--output", "-o")
        if name == "bench":
            p.add_argument("--count", type=int, default=10)
            p.add_argument("--algorithm", action="append")
            p.add_argument("--epsilon", type=_epsilon)
            p.add_argument("--oracle-cap", type=int, default=DEFAULT_CAP)
            p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    return parser


def _fail(message: str, code: int = EXIT_ERROR) -> int:
    print(f"duomap: {message}", file=sys.stderr)
    return code


def _emit(text: str, path: str | None = None) -> None:
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_text(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def _report_row(report, instance: str, generator: str = "", seed="", opt=None) -> dict:
    eps = report.params.get("epsilon")
    row = {
        "instance": instance,
        "generator": generator,
        "seed": seed,
        "algorithm": report.algorithm,
        "epsilon": "" if eps is None else str(eps),
        "k": report.params.get("k", ""),
        "t": report.params.get("t", ""),
        "guarantee": str(report.guarantee),
        "size": report.size,
        "opt": "" if opt is None else opt,
        "ratio": "",
        "within_guarantee": "",
        "error": "",
        "phase1_ms": f"{report.timings_ms['phase1']:.3f}",
        "phase2_ms": f"{report.timings_ms['phase2']:.3f}",
    }
    if opt is not None:
        ratio = Fraction(opt, report.size) if report.size else (Fraction(1) if opt == 0 else None)
        row["ratio"] = "inf" if ratio is None else f"{float(ratio):.6f}"
        row["within_guarantee"] = report.guarantee * report.size >= opt
    return row


def cmd_solve(args) -> int:
    if args.algorithm == "eps" and args.epsilon is None:
        return _fail("--epsilon is required with --algorithm eps", 2)
    inst = load_instance(args.instance)
    g = as_graph(inst)
    report = run_algorithm(args.algorithm, g, args.epsilon, args.budget)
    assert is_valid(report.solution, g)
    if args.format == "csv":
        row = _report_row(report, args.instance)
        row.update(n_a=g.n_a, n_b=g.n_b, edges=len(g))
        _emit(_csv_text([row]))
        return 0
    mapping = pieces = None
    if isinstance(inst, MPSMInstance):
        mapping = extract_letter_mapping(inst.x, inst.y, report.solution)
        pieces = mcsp_pieces(inst.x, mapping)
    _emit(json.dumps(report_dict(report, mapping, pieces), indent=2) + "\n")
    return 0


def cmd_exact(args) -> int:
    g = as_graph(load_instance(args.instance))
    t0 = time.perf_counter()
    opt = exact_opt(g, cap=args.oracle_cap)
    elapsed = (time.perf_counter() - t0) * 1e3
    assert is_valid(opt, g)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["instance", "edges", "size", "time_ms"])
        w.writerow([args.instance, len(g), len(opt), f"{elapsed:.3f}"])
        _emit(buf.getvalue())
        return 0
    out = {
        "format_version": FORMAT_VERSION,
        "algorithm": "exact",
        "size": len(opt),
        "guarantee": "1",
        "edges": [[e.i, e.j] for e in opt.sorted_edges()],
        "timings_ms": {"phase1": elapsed, "phase2": 0.0},
    }
    _emit(json.dumps(out, indent=2) + "\n")
    return 0


def cmd_convert(args) -> int:
    inst = load_instance(args.instance)
    if not isinstance(inst, MPSMInstance):
        return _fail("convert needs an mpsm string instance")
    g = as_graph(inst)
    if args.algorithm == "exact":
        solution = exact_opt(g, cap=args.oracle_cap)
        head = {"algorithm": "exact", "guarantee": "1"}
    else:
        if args.algorithm == "eps" and args.epsilon is None:
            return _fail("--epsilon is required with --algorithm eps", 2)
        report = run_algorithm(args.algorithm, g, args.epsilon, args.budget)
        solution = report.solution
        head = {"algorithm": report.algorithm, "guarantee": str(report.guarantee)}
    assert is_valid(solution, g)
    mapping = extract_letter_mapping(inst.x, inst.y, solution)
    duos = mapping.preserved_duos()
    pieces = mcsp_pieces(inst.x, mapping)
    out = {
        "format_version": FORMAT_VERSION,
        **head,
        "size": len(solution),
        "edges": [[e.i, e.j] for e in solution.sorted_edges()],
        "mapping": list(mapping.targets),
        "duos": duos,
        "pieces": pieces,
        "length": len(inst.x),
        "identity_holds": duos + pieces == len(inst.x),
    }
    _emit(json.dumps(out, indent=2) + "\n")
    return 0


def _generate(args, seed: int):
    if args.generator == "mcsp":
        return gen_mcsp_instance(args.n, args.blocks, args.sigma, seed)
    if args.generator == "random":
        return gen_random_graph(args.n, args.n, args.p, seed)
    return gen_staircase_graph(args.n, seed)


def cmd_gen(args) -> int:
    _emit(serialize_instance(_generate(args, args.seed)), args.output)
    return 0


def _bench_cell(job) -> list[dict]:
    args, seed, algorithms = job
    inst = _generate(args, seed)
    g = as_graph(inst)
    name = f"{args.generator}-n{args.n}-s{seed}"
    base = {"instance": name, "generator": args.generator, "seed": seed, "n_a": g.n_a, "n_b": g.n_b, "edges": len(g)}
    opt = None
    if len(g) <= args.oracle_cap:
        opt = len(exact_opt(g, cap=args.oracle_cap))
    rows = []
    for algo in algorithms:
        try:
            report = run_algorithm(algo, g, args.epsilon, args.budget)
            assert is_valid(report.solution, g)
            row = _report_row(report, name, args.generator, seed, opt)
        except (DuomapError, AssertionError) as exc:
            row = {f: "" for f in CSV_FIELDS}
            row.update(algorithm=algo, error=f"{type(exc).__name__}: {exc}", opt="" if opt is None else opt)
        row.update(base)
        rows.append(row)
    return rows


def cmd_bench(args) -> int:
    algorithms = _algorithms(args.algorithm, ["approx4", "approx3", "approx267"])
    if "eps" in algorithms and args.epsilon is None:
        return _fail("--epsilon is required when benchmarking eps", 2)
    jobs = [(args, args.seed + s, algorithms) for s in range(args.count)] if algorithms else []
    threads = max(1, int(os.environ.get("DUOMAP_THREADS", "1") or 1))
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(_bench_cell, jobs))
    else:
        chunks = [_bench_cell(job) for job in jobs]
    _emit(_csv_text([row for chunk in chunks for row in chunk]), args.output)
    return 0


COMMANDS = {"solve": cmd_solve, "exact": cmd_exact, "bench": cmd_bench, "gen": cmd_gen, "convert": cmd_convert}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except InstanceTooLarge as exc:
        return _fail(str(exc), EXIT_TOO_LARGE)
    except SizeGuardExceeded as exc:
        return _fail(str(exc), EXIT_BUDGET)
    except (DuomapError, OSError, ValueError) as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
