"""Command line front end.

Exit codes: 0 success, 1 usage error, 2 invalid input, 3 guarantee
violation detected by `verify`.  All timing chatter goes to stderr so
stdout is stable for a fixed seed.
"""

import argparse
import json
import sys
import time
from typing import List, Optional

from . import bench as bench_mod
from . import generators, planting
from ._backend import HAVE_FAST
from .approx import approximate_girth
from .graph import INF, GraphError, load_graph, save_graph, serialize_edge_list
from .oracles import exact_girth
from .verify import run_verification

EXACT_WARN_N = 2000


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; the contract reserves 2
    # for invalid input files, so usage problems must exit 1 instead.
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _fmt(x: float) -> str:
    if x == INF:
        return "inf"
    return repr(x)


def _load(path: str):
    try:
        return load_graph(path)
    except FileNotFoundError:
        raise GraphError(f"no such file: {path}")


def _add_backend_flag(p):
    p.add_argument("--backend", choices=["auto", "pure", "fast"], default=None,
                   help="force an implementation (default: fast when built)")


def _write_graph(graph, out: Optional[str]):
    if out is None or out == "-":
        sys.stdout.write(serialize_edge_list(graph))
    else:
        save_graph(graph, out)


def build_parser() -> _Parser:
    top = _Parser(prog="shortcycle",
                  description="Approximate shortest-cycle computation for "
                              "positively weighted undirected graphs.")
    sub = top.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("approx", help="approximate the girth")
    p.add_argument("--input", required=True, help="edge list file")
    p.add_argument("-k", type=int, default=2, help="tradeoff parameter (default 2)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--materialize", action="store_true",
                   help="also output an explicit witness cycle")
    p.add_argument("--parallel", action="store_true")
    p.add_argument("--json", action="store_true", dest="as_json")
    _add_backend_flag(p)

    p = sub.add_parser("exact", help="exact girth by edge deletion")
    p.add_argument("--input", required=True)
    p.add_argument("--json", action="store_true", dest="as_json")

    p = sub.add_parser("verify", help="check the approximation guarantee on "
                                      "generated instances")
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--ks", default="1,2,3", help="comma separated k values")
    p.add_argument("--nmin", type=int, default=20)
    p.add_argument("--nmax", type=int, default=150)
    p.add_argument("--adversarial", type=int, default=5,
                   help="extra planted instances per regime")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true", dest="as_json")
    _add_backend_flag(p)

    p = sub.add_parser("stats", help="instrumentation reports")
    stats_sub = p.add_subparsers(dest="stats_command", metavar="what")
    q = stats_sub.add_parser("clusters", help="cluster size totals vs. the "
                                              "k n^(1+1/k) budget")
    q.add_argument("--n", type=int, default=1024)
    q.add_argument("-k", type=int, default=2)
    q.add_argument("--seeds", type=int, default=5)
    q.add_argument("--degree", type=float, default=6.0, help="average degree")
    q.add_argument("--seed", type=int, default=0)
    _add_backend_flag(q)

    p = sub.add_parser("gen", help="write generated instances")
    gen_sub = p.add_subparsers(dest="gen_command", metavar="family")

    q = gen_sub.add_parser("gnp")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--p", type=float, required=True)
    q.add_argument("--wmin", type=float, default=0.0)
    q.add_argument("--wmax", type=float, default=1.0)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--connected", action="store_true")
    q.add_argument("--out", default="-")

    q = gen_sub.add_parser("grid")
    q.add_argument("--rows", type=int, required=True)
    q.add_argument("--cols", type=int, required=True)
    q.add_argument("--wmin", type=float, default=0.0)
    q.add_argument("--wmax", type=float, default=1.0)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--out", default="-")

    q = gen_sub.add_parser("named")
    q.add_argument("--name", required=True,
                   choices=sorted(generators.NAMED_GRAPHS))
    q.add_argument("--g", type=int, default=8, help="cycle length for --name cycle")
    q.add_argument("--out", default="-")

    q = gen_sub.add_parser("plant")
    q.add_argument("--base", required=True,
                   help="named base graph, or a path to a unit edge list")
    q.add_argument("--g", type=int, default=8, help="cycle length when base is 'cycle'")
    q.add_argument("--eps", type=float, default=0.1)
    q.add_argument("--out", required=True,
                   help="instance file; metadata goes to <out>.json")

    p = sub.add_parser("lb-experiment", help="sequential edge-access experiment "
                                             "on a planted instance")
    p.add_argument("--instance", help="planted instance written by gen plant")
    p.add_argument("--base", help="named base graph to plant on the fly")
    p.add_argument("--g", type=int, default=8)
    p.add_argument("--eps", type=float, default=0.1)
    p.add_argument("--budget", type=int, required=True)
    p.add_argument("--strategy", default="round-robin",
                   choices=sorted(planting.STRATEGIES))
    p.add_argument("--json", action="store_true", dest="as_json")

    p = sub.add_parser("bench", help="compare backends")
    p.add_argument("--sizes", default="512,1024")
    p.add_argument("-k", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--degree", type=float, default=6.0)
    p.add_argument("--repeat", type=int, default=1)
    p.add_argument("--parallel", action="store_true")

    return top


def _parse_ints(text: str, what: str) -> List[int]:
    try:
        vals = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise _Usage(f"bad {what} list: {text!r}")
    if not vals:
        raise _Usage(f"empty {what} list")
    return vals


class _Usage(Exception):
    pass


def _cmd_approx(args) -> int:
    if args.k < 1:
        raise _Usage("k must be at least 1")
    graph = _load(args.input)
    t0 = time.perf_counter()
    res = approximate_girth(graph, args.k, rng_seed=args.seed,
                            materialize=args.materialize, parallel=args.parallel,
                            backend=args.backend)
    sys.stderr.write(f"approx took {time.perf_counter() - t0:.3f}s "
                     f"(backend={res.diagnostics['backend']})\n")
    if args.as_json:
        print(res.to_json())
        return 0
    print(f"alpha = {_fmt(res.alpha)}")
    if res.witness is not None:
        w = res.witness
        print(f"witness: center={w.u} edge=({w.v},{w.w}) bound={_fmt(w.bound)}")
    if res.materialized is not None:
        mat = res.materialized
        print(f"cycle ({len(mat.vertices)} vertices, length {_fmt(mat.length)}): "
              + " ".join(str(v) for v in mat.vertices))
    return 0


def _cmd_exact(args) -> int:
    graph = _load(args.input)
    if graph.n > EXACT_WARN_N:
        sys.stderr.write(f"warning: exact girth on n={graph.n} vertices may be "
                         f"slow; consider approx\n")
    t0 = time.perf_counter()
    g = exact_girth(graph)
    sys.stderr.write(f"exact took {time.perf_counter() - t0:.3f}s\n")
    if args.as_json:
        print(json.dumps({"girth": None if g == INF else g, "n": graph.n,
                          "m": graph.m}, sort_keys=True))
    else:
        print(f"girth = {_fmt(g)}")
    return 0


def _cmd_verify(args) -> int:
    if args.trials < 1:
        raise _Usage("need at least one trial")
    ks = _parse_ints(args.ks, "k")
    if any(k < 1 for k in ks):
        raise _Usage("k values must be at least 1")
    report = run_verification(args.trials, ks, args.nmin, args.nmax, args.seed,
                              adversarial_per_regime=args.adversarial,
                              backend=args.backend)
    sys.stderr.write(f"verify took {report.elapsed:.3f}s\n")
    if args.as_json:
        print(json.dumps({"trials": report.trials, "ks": report.ks,
                          "max_ratio": {str(k): report.max_ratio[k] for k in report.ks},
                          "violations": report.violations}, sort_keys=True))
    else:
        print(f"instances checked: {report.trials}")
        for k in report.ks:
            print(f"k={k}: max alpha/girth = {report.max_ratio[k]:.6f} "
                  f"(bound {4.0 * k / 3.0:.6f})")
    if report.violations:
        for v in report.violations:
            sys.stderr.write(f"VIOLATION: {v}\n")
        return 3
    return 0


def _cmd_stats_clusters(args) -> int:
    if args.k < 1:
        raise _Usage("k must be at least 1")
    if args.seeds < 1:
        raise _Usage("need at least one seed")
    n = args.n
    m = int(n * args.degree / 2)
    totals = []
    for s in range(args.seeds):
        graph = generators.gnm(n, m, 0.0, 1.0, args.seed + s)
        res = approximate_girth(graph, args.k, rng_seed=args.seed + s,
                                backend=args.backend)
        totals.append(res.diagnostics["cluster_members_total"])
    mean = sum(totals) / len(totals)
    budget = args.k * n ** (1.0 + 1.0 / args.k)
    print(f"n = {n}  m = {m}  k = {args.k}  seeds = {args.seeds}")
    print(f"mean total cluster size = {mean:.1f}")
    print(f"budget k*n^(1+1/k)      = {budget:.1f}")
    print(f"ratio                   = {mean / budget:.4f}")
    return 0


def _base_graph(name_or_path: str, g: int):
    if name_or_path in generators.NAMED_GRAPHS:
        return generators.named(name_or_path, g=g)
    return _load(name_or_path)


def _cmd_gen(args) -> int:
    cmd = args.gen_command
    if cmd is None:
        raise _Usage("gen requires a family (gnp, grid, named, plant)")
    if cmd == "gnp":
        if args.connected:
            graph = generators.connected_gnp(args.n, args.p, args.wmin, args.wmax,
                                             args.seed)
        else:
            graph = generators.gnp(args.n, args.p, args.wmin, args.wmax, args.seed)
        _write_graph(graph, args.out)
    elif cmd == "grid":
        _write_graph(generators.grid(args.rows, args.cols, args.wmin, args.wmax,
                                     args.seed), args.out)
    elif cmd == "named":
        _write_graph(generators.named(args.name, g=args.g), args.out)
    elif cmd == "plant":
        base = _base_graph(args.base, args.g)
        inst = planting.plant(base, args.eps)
        planting.save_instance(inst, args.out)
        sys.stderr.write(f"planted: n={inst.graph.n} m={inst.graph.m} "
                         f"g0={_fmt(inst.g0)} |S|={len(inst.S)}\n")
    return 0


def _cmd_lb_experiment(args) -> int:
    if args.budget < 0:
        raise _Usage("budget must be nonnegative")
    if args.instance is not None:
        inst = planting.load_instance(args.instance)
    elif args.base is not None:
        inst = planting.plant(_base_graph(args.base, args.g), args.eps)
    else:
        raise _Usage("need --instance or --base")
    report = planting.run_access_experiment(inst, args.budget, args.strategy)
    if args.as_json:
        print(json.dumps({"budget": report.budget,
                          "queries_used": report.queries_used,
                          "plantable_total": report.plantable_total,
                          "plantable_revealed": report.plantable_revealed,
                          "fraction_unseen": report.fraction_unseen},
                         sort_keys=True))
    else:
        print(f"budget            = {report.budget}")
        print(f"queries used      = {report.queries_used}")
        print(f"plantable edges   = {report.plantable_total}")
        print(f"revealed          = {report.plantable_revealed}")
        print(f"fraction unseen   = {report.fraction_unseen:.4f}")
    return 0


def _cmd_bench(args) -> int:
    sizes = _parse_ints(args.sizes, "size")
    rows = bench_mod.run_bench(sizes, k=args.k, seed=args.seed,
                               avg_degree=args.degree, repeat=args.repeat,
                               parallel=args.parallel)
    if not HAVE_FAST:
        sys.stderr.write("note: compiled backend not built, timing pure only\n")
    print(bench_mod.format_rows(rows))
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 1
    try:
        if args.command == "approx":
            return _cmd_approx(args)
        if args.command == "exact":
            return _cmd_exact(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "stats":
            if args.stats_command != "clusters":
                raise _Usage("stats requires a report name (clusters)")
            return _cmd_stats_clusters(args)
        if args.command == "gen":
            return _cmd_gen(args)
        if args.command == "lb-experiment":
            return _cmd_lb_experiment(args)
        if args.command == "bench":
            return _cmd_bench(args)
        raise _Usage(f"unknown command {args.command!r}")
    except _Usage as exc:
        sys.stderr.write(f"shortcycle: error: {exc}\n")
        return 1
    except GraphError as exc:
        sys.stderr.write(f"shortcycle: invalid input: {exc}\n")
        return 2
    except planting.PlantingError as exc:
        sys.stderr.write(f"shortcycle: invalid input: {exc}\n")
        return 2
    except OSError as exc:
        sys.stderr.write(f"shortcycle: invalid input: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
