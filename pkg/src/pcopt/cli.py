"""Command-line entry point: ``pcopt {analyze,color,verify,exact,bench,probe}``.

Exit codes: 0 success, 1 input error, 2 a supplied plan fails verification,
3 budget or size cap exceeded, 4 internal error (a proven guarantee failed).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
import time

from .analysis import DEFAULT_VERTEX_CAP, independence_number, structure_report
from .constructor import conjecture_probe, construct_plan
from .errors import CapExceeded, DisconnectedGraphError, GraphFormatError, InternalError
from .graph import (Graph, complete, complete_bipartite, cycle, parse_family, parse_graph, path, random_connected,
                    random_tree, star)
from .oracle import alpha_bound, exact_pc_opt
from .plan import ColoringPlan
from .verifier import is_properly_connected

EXIT_OK, EXIT_INPUT, EXIT_VERIFY, EXIT_INFEASIBLE, EXIT_INTERNAL = 0, 1, 2, 3, 4


def _load_graph(args) -> Graph:
    if args.family and args.graph:
        raise ValueError("give either a graph file or --family, not both")
    if args.family:
        g = parse_family(args.family, args.seed)
    elif args.graph:
        if args.graph == "-":
            g = parse_graph(sys.stdin.read())
        else:
            with open(args.graph, encoding="utf-8") as fh:
                g = parse_graph(fh.read())
    else:
        raise ValueError("no graph given (path, '-' for stdin, or --family)")
    if g.n > args.cap:
        raise CapExceeded(f"{g.n} vertices exceeds the vertex cap {args.cap}")
    return g


def _emit(obj: dict, fmt: str, text: str) -> str:
    if fmt == "text":
        return text
    return json.dumps(obj, indent=2)


def cmd_analyze(args) -> tuple[int, str]:
    g = _load_graph(args)
    rep = structure_report(g, cap=args.cap)
    text = (f"alpha={rep.alpha} mis={list(rep.mis)}\nH={list(rep.h_vertices)} delta={rep.delta} "
            f"center={rep.center}\nT={[list(e) for e in rep.tree_edges]}\nI={list(rep.chosen_set)}")
    return EXIT_OK, _emit(rep.to_json(), args.format, text)


def cmd_color(args) -> tuple[int, str]:
    g = _load_graph(args)
    plan = construct_plan(g)
    if args.optimize and plan.cost > 0:
        res = exact_pc_opt(g, budget=plan.cost - 1)
        if res.status == "exact":
            plan = res.plan
    if not args.trace:
        plan.trace = None
    text = f"method={plan.method} cost={plan.cost} palette={plan.palette}\n" + "\n".join(
        f"{u} {v} -> {c}" for u, v, c in plan.recolored)
    return EXIT_OK, _emit(plan.to_json(), args.format, text)


def cmd_verify(args) -> tuple[int, str]:
    g = _load_graph(args)
    if not args.plan:
        raise ValueError("verify needs --plan")
    with open(args.plan, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"plan is not valid JSON: {exc}") from None
    plan = ColoringPlan.from_json(data, g)
    rep = is_properly_connected(plan.coloring(g), witnesses=args.witnesses)
    if rep.properly_connected:
        text = f"ok p={rep.cost_p} q={rep.cost_q} cost={rep.total_cost}"
    else:
        text = f"FAIL no properly colored path between {rep.failing_pair[0]} and {rep.failing_pair[1]}"
        print(f"failing pair: {rep.failing_pair[0]} {rep.failing_pair[1]}", file=sys.stderr)
    out = _emit(rep.to_json(witnesses=args.witnesses), args.format, text)
    return (EXIT_OK if rep.properly_connected else EXIT_VERIFY), out


def cmd_exact(args) -> tuple[int, str]:
    g = _load_graph(args)
    res = exact_pc_opt(g, budget=args.budget)
    text = f"{res.status} value={res.value} explored={res.explored} budget={res.budget}"
    return (EXIT_OK if res.status == "exact" else EXIT_INFEASIBLE), _emit(res.to_json(), args.format, text)


def cmd_probe(args) -> tuple[int, str]:
    g = _load_graph(args)
    rep = conjecture_probe(g)
    text = f"alpha={rep.alpha} pc_opt={rep.pc_opt} bound={rep.conjectured_bound} {rep.status}"
    return (EXIT_INFEASIBLE if rep.status == "inconclusive" else EXIT_OK), _emit(rep.to_json(), args.format, text)


def bench_instances(family: str, max_n: int, seed: int, count: int):
    """(name, graph) pairs for a family sweep; random members are seeded from ``seed``."""
    rng = random.Random(seed)
    if family == "tree":
        for n in range(2, max_n + 1):
            for _ in range(count):
                s = rng.randrange(2**31)
                yield f"random_tree({n},seed={s})", random_tree(n, s)
    elif family == "random_connected":
        for n in range(2, max_n + 1):
            for _ in range(count):
                s = rng.randrange(2**31)
                yield f"random_connected({n},0.5,seed={s})", random_connected(n, 0.5, s)
    elif family == "star":
        for m in range(1, max_n):
            yield f"star({m})", star(m)
    elif family == "complete_bipartite":
        for a in range(1, max_n):
            for b in range(1, min(a, max_n - a) + 1):
                yield f"complete_bipartite({a},{b})", complete_bipartite(a, b)
    elif family in ("path", "complete"):
        maker = path if family == "path" else complete
        for n in range(1, max_n + 1):
            yield f"{family}({n})", maker(n)
    elif family == "cycle":
        for n in range(3, max_n + 1):
            yield f"cycle({n})", cycle(n)
    else:
        raise ValueError(f"unknown bench family {family!r}")


def cmd_bench(args) -> tuple[int, str]:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["instance", "alpha", "bound", "constructed_cost", "exact_cost", "time_ms"])
    for name, g in bench_instances(args.family, args.max_n, args.seed, args.count):
        start = time.perf_counter()
        alpha, _ = independence_number(g, cap=args.cap)
        built = construct_plan(g)
        res = exact_pc_opt(g, budget=alpha_bound(alpha))
        elapsed = (time.perf_counter() - start) * 1000
        exact = res.value if res.status == "exact" else ""
        writer.writerow([name, alpha, alpha_bound(alpha), built.cost, exact,
                         f"{elapsed:.1f}" if args.timing else ""])
    return EXIT_OK, buf.getvalue().rstrip("\n")


COMMANDS = {
    "analyze": cmd_analyze,
    "color": cmd_color,
    "verify": cmd_verify,
    "exact": cmd_exact,
    "bench": cmd_bench,
    "probe": cmd_probe,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pcopt", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    cap_default = int(os.environ.get("PCOPT_VERTEX_CAP", DEFAULT_VERTEX_CAP))

    def common(p, fmt_choices=("json", "text")):
        p.add_argument("--seed", type=int, default=None, help="seed for random families")
        p.add_argument("--cap", type=int, default=cap_default, help="vertex cap for exact searches (env PCOPT_VERTEX_CAP)")
        p.add_argument("--format", choices=fmt_choices, default=fmt_choices[0])

    for name in ("analyze", "color", "verify", "exact", "probe"):
        p = sub.add_parser(name)
        p.add_argument("graph", nargs="?", help="edge-list file, or '-' for stdin")
        p.add_argument("--family", help="generated graph, e.g. star:9, complete_bipartite:7,2, random_tree:8")
        common(p)
        if name == "color":
            p.add_argument("--optimize", action="store_true", help="search for a cheaper exact plan below the constructed cost")
            p.add_argument("--trace", action=argparse.BooleanOptionalAction, default=True)
        if name == "verify":
            p.add_argument("--plan", help="ColoringPlan JSON file")
            p.add_argument("--witnesses", action="store_true", help="include a certificate path per pair")
        if name == "exact":
            p.add_argument("--budget", type=int, default=None, help="largest total cost searched (default: proven bound)")

    p = sub.add_parser("bench")
    p.add_argument("--family", required=True,
                   choices=["tree", "random_connected", "star", "complete_bipartite", "path", "cycle", "complete"])
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--count", type=int, default=3, help="instances per size for random families")
    p.add_argument("--timing", action=argparse.BooleanOptionalAction, default=True,
                   help="fill the time_ms column (disable for byte-identical output)")
    common(p, ("csv",))
    return parser


def run(argv=None) -> tuple[int, str]:
    args = build_parser().parse_args(argv)
    if args.cap <= 0:
        return EXIT_INPUT, "error: --cap must be positive"
    if args.command == "bench" and args.seed is None:
        if args.family in ("tree", "random_connected"):
            return EXIT_INPUT, "error: random bench families need --seed"
        args.seed = 0
    try:
        return COMMANDS[args.command](args)
    except CapExceeded as exc:
        return EXIT_INFEASIBLE, f"error: {exc}"
    except InternalError as exc:
        return EXIT_INTERNAL, f"internal error: {exc}"
    except (GraphFormatError, DisconnectedGraphError, ValueError, OSError) as exc:
        return EXIT_INPUT, f"error: {exc}"


def main(argv=None) -> int:
    code, out = run(argv)
    if out:
        stream = sys.stderr if out.startswith(("error:", "internal error:")) else sys.stdout
        print(out, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
