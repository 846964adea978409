"""
Command-line front end.

    pushsum-rates graph ba --n 24 --m 2 --seed 7 --out g.txt
    pushsum-rates bounds g.txt --q 0.5
    pushsum-rates sweep --family regular --n 24 --d 4 --seed 1 --out fig2a.csv
    pushsum-rates probe-conjecture --family regular --n 24 --d 4 --out probe.csv

Exit codes: 0 success, 1 invalid input, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import logging
import math
import sys

from . import __version__
from .bounds import bound_eta, bound_general, bound_symmetric, bound_transitive
from .errors import NumericalFailure, PushSumError
from .experiment import (
    ALL_BOUNDS,
    DEFAULT_ETA_MAX_N,
    DEFAULT_SLACK,
    ExperimentConfig,
    GraphSource,
    convert_log_base,
    count_violations,
    run_sweep,
)
from .graphgen import format_graph, uniform_transition, write_graph
from .report import format_reports
from .spectral import is_symmetric, sym_eigenvalues

EXIT_OK, EXIT_INPUT, EXIT_NUMERICAL = 0, 1, 2
FAMILIES = ("ba", "regular", "cayley", "complete", "cycle", "ring")


def _add_family_params(p):
    p.add_argument("--n", type=int, help="vertex count (ba, regular, complete, cycle, ring)")
    p.add_argument("--m", type=int, help="edges per new vertex (ba)")
    p.add_argument("--d", type=int, help="degree (regular)")
    p.add_argument("--k", type=int, help="symmetric group S_k (cayley)")
    p.add_argument("--gens", type=int, help="number of random generators (cayley)")
    p.add_argument("--self-loops", action="store_true", help="complete graph including i -> i")


def _family_params(args) -> dict:
    need = {
        "ba": ("n", "m"),
        "regular": ("n", "d"),
        "cayley": ("k", "gens"),
        "complete": ("n",),
        "cycle": ("n",),
        "ring": ("n",),
    }[args.family]
    missing = [f"--{k}" for k in need if getattr(args, k) is None]
    if missing:
        raise argparse.ArgumentTypeError(f"family {args.family!r} needs {', '.join(missing)}")
    params = {k: getattr(args, k) for k in need}
    if args.family == "complete" and args.self_loops:
        params["self_loops"] = True
    return params


def _source(args) -> GraphSource:
    if getattr(args, "graph", None):
        if args.family:
            raise argparse.ArgumentTypeError("give either a graph file or --family, not both")
        return GraphSource(path=args.graph, seed=args.seed)
    if not args.family:
        raise argparse.ArgumentTypeError("no graph given: pass a graph file or --family")
    return GraphSource(args.family, _family_params(args), seed=args.seed)


def _log_base(args) -> float:
    if getattr(args, "log2", False):
        return 2.0
    if getattr(args, "log10", False):
        return 10.0
    return math.e


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pushsum-rates", description=__doc__.split("\n\n")[0].strip())
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("graph", help="generate a graph and write it as an edge list")
    g.add_argument("family", choices=FAMILIES)
    _add_family_params(g)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", help="output file (default: stdout)")

    units = argparse.ArgumentParser(add_help=False)
    grp = units.add_mutually_exclusive_group()
    grp.add_argument("--log2", action="store_true", help="report rates in log base 2")
    grp.add_argument("--log10", action="store_true", help="report rates in log base 10")

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("graph", nargs="?", help="edge-list file")
    source.add_argument("--family", choices=FAMILIES, help="generate the graph instead of reading a file")
    _add_family_params(source)
    source.add_argument("--seed", type=int, default=0)
    source.add_argument("--assert-transitive", action="store_true",
                        help="treat the message matrix as transitive (unchecked)")
    source.add_argument("--eta-max-n", type=int, default=DEFAULT_ETA_MAX_N,
                        help="largest N for the Kronecker-square bound (default %(default)s)")

    b = sub.add_parser("bounds", parents=[source, units], help="print every applicable bound")
    b.add_argument("--q", type=float, required=True)

    sweep_opts = argparse.ArgumentParser(add_help=False)
    sweep_opts.add_argument("--q-start", type=float, default=0.05)
    sweep_opts.add_argument("--q-end", type=float, default=0.95)
    sweep_opts.add_argument("--q-steps", type=int, default=19)
    sweep_opts.add_argument("--t", type=int, help="steps per run (default 500, or 1000 when N > 120)")
    sweep_opts.add_argument("--reps", type=int, default=10)
    sweep_opts.add_argument("--m-rows", type=int, help="tracked rows for the reduced estimator")
    sweep_opts.add_argument("--slack", type=float, default=DEFAULT_SLACK)
    sweep_opts.add_argument("--workers", type=int, default=1)
    sweep_opts.add_argument("--bounds", default=",".join(ALL_BOUNDS),
                            help="comma-separated subset of %(default)s")
    sweep_opts.add_argument("--out", help="CSV output file (default: stdout)")

    sub.add_parser("sweep", parents=[source, units, sweep_opts], help="sweep q and write a CSV report")
    sub.add_parser("probe-conjecture", parents=[source, units, sweep_opts],
                   help="apply the transitive formula to symmetric, non-transitive graphs")
    return ap


def cmd_graph(args) -> int:
    graph = GraphSource(args.family, _family_params(args), seed=args.seed).build()
    P = uniform_transition(graph)
    deg = graph.degrees
    stats = (
        f"N={graph.n} edges={graph.num_edges} directed={int(graph.directed)} "
        f"degree min/mean/max={deg.min()}/{deg.mean():.4g}/{deg.max()} "
        f"symmetric_P={'yes' if P.is_symmetric() else 'no'}"
    )
    if args.out:
        write_graph(graph, args.out)
        print(stats)
    else:
        sys.stdout.write(format_graph(graph))
        print(stats, file=sys.stderr)
    return EXIT_OK


def cmd_bounds(args) -> int:
    src = _source(args)
    graph = src.build()
    P = uniform_transition(graph).matrix
    q = args.q
    scale = 1.0 / math.log(_log_base(args))
    symmetric = is_symmetric(P)
    transitive = args.assert_transitive or src.transitive_by_construction
    print(f"graph={src.label} N={graph.n} q={q:g} symmetric_P={'yes' if symmetric else 'no'}")

    rows = [("general", bound_general(P, q))]
    if symmetric:
        spec = sym_eigenvalues(P)
        rows.append(("symmetric", bound_symmetric(float(spec.lambdas[1]), q)))
        if transitive:
            rows.append(("transitive", bound_transitive(spec, q)))
        else:
            rows.append(("transitive", "not applicable: transitivity not declared (--assert-transitive)"))
    else:
        rows.append(("symmetric", "not applicable: P not symmetric"))
        rows.append(("transitive", "not applicable: P not symmetric"))
    if graph.n <= args.eta_max_n:
        rows.append(("eta", bound_eta(P, q)))
    else:
        rows.append(("eta", f"skipped: N > {args.eta_max_n}"))

    for kind, bound in rows:
        if isinstance(bound, str):
            print(f"{kind:<11} {bound}")
            continue
        note = "" if bound.applicable else f"  [{bound.reason}]"
        print(f"{kind:<11} {bound.value * scale:.10g}{note}")
    return EXIT_OK


def _config(args) -> ExperimentConfig:
    kinds = tuple(k.strip() for k in args.bounds.split(",") if k.strip())
    unknown = set(kinds) - set(ALL_BOUNDS)
    if unknown:
        raise argparse.ArgumentTypeError(f"unknown bound(s): {', '.join(sorted(unknown))}")
    return ExperimentConfig(
        source=_source(args),
        q_start=args.q_start,
        q_end=args.q_end,
        q_steps=args.q_steps,
        t=args.t,
        m_rows=args.m_rows,
        repetitions=args.reps,
        seed=args.seed,
        bounds=kinds,
        assert_transitive=args.assert_transitive,
        eta_max_n=args.eta_max_n,
        slack=args.slack,
        workers=args.workers,
    )


def _emit(reports, args):
    text = format_reports(convert_log_base(reports, _log_base(args)))
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_sweep(args) -> int:
    reports = run_sweep(_config(args))
    _emit(reports, args)
    return EXIT_OK


def cmd_probe_conjecture(args) -> int:
    cfg = _config(args)
    reports = run_sweep(cfg, probe=True)
    _emit(reports, args)
    n_sim = sum(r.emp_rate is not None for r in reports)
    summary = (
        "conjecture probe: transitive formula applied outside its hypothesis\n"
        f"graph={cfg.source.label} points={len(reports)} simulated={n_sim} "
        f"violations={count_violations(reports, 'transitive')} (empirical > formula + {cfg.slack:g})"
    )
    print(summary, file=sys.stdout if args.out else sys.stderr)
    return EXIT_OK


COMMANDS = {
    "graph": cmd_graph,
    "bounds": cmd_bounds,
    "sweep": cmd_sweep,
    "probe-conjecture": cmd_probe_conjecture,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR, format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args)
    except NumericalFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (PushSumError, argparse.ArgumentTypeError, OSError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
