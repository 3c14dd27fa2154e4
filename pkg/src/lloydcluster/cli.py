"""Command-line front end: clustering runs, experiment batteries, and the
multigrid harness, all keyed by a master seed for exact reproducibility."""

from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

from .amg import (
    beta_localization,
    convergence_factor,
    cycle_complexity,
    poisson_grid,
    poisson_path,
    sa_setup,
    v_cycle,
    work_per_digit,
)
from .balanced import balanced_lloyd_cluster, state_from_membership
from .baselines import greedy_cluster, mis2_cluster
from .graphs import grid_graph, path_graph, strength_to_distance, validate_clustering
from .lloyd import lloyd_cluster
from .metrics import cluster_stats
from .mmio import load_matrix_market
from .rebalance import rebalanced_lloyd_cluster

SCHEMA_VERSION = 1
EXIT_OK = 0
EXIT_VALIDATION = 3
EXIT_DIVERGED = 4

METHODS = ("standard", "balanced", "rebalanced", "greedy", "mis2")


def entry_point():
    sys.exit(main())


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="lloydcluster",
        description="Graph clustering (Lloyd family and baselines) with a "
        "smoothed-aggregation multigrid harness.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_cluster = sub.add_parser("cluster", help="cluster one graph and report quality")
    _add_graph_flags(p_cluster)
    p_cluster.add_argument("--method", choices=METHODS, required=True)
    p_cluster.add_argument("--nclusters", type=int, default=None)
    p_cluster.add_argument("--centers", type=str, default=None,
                           help="explicit centers, e.g. 1,2,3 or 1..10")
    p_cluster.add_argument("--seed", type=int, default=0)
    _add_cap_flags(p_cluster)
    p_cluster.add_argument("--json", dest="json_out", default="-",
                           help="report path or - for stdout")
    p_cluster.add_argument("--csv", dest="csv_out", default=None,
                           help="optional membership CSV path")
    p_cluster.set_defaults(func=cmd_cluster)

    p_exp = sub.add_parser("experiment", help="run a reproducible experiment battery")
    exp_sub = p_exp.add_subparsers(dest="experiment", required=True)

    p_tie = exp_sub.add_parser("tiebreak", help="tie-breaking on/off comparison")
    _add_graph_flags(p_tie)
    p_tie.add_argument("--frac", type=float, default=0.1,
                       help="clusters as a fraction of nodes")
    p_tie.add_argument("--runs", type=int, default=200)
    p_tie.add_argument("--seed", type=int, default=0)
    _add_cap_flags(p_tie)
    p_tie.add_argument("--out", default="-")
    p_tie.set_defaults(func=cmd_experiment_tiebreak)

    p_cmp = exp_sub.add_parser("compare", help="standard vs balanced vs rebalanced")
    _add_graph_flags(p_cmp)
    p_cmp.add_argument("--frac", type=float, default=0.1)
    p_cmp.add_argument("--runs", type=int, default=100)
    p_cmp.add_argument("--seed", type=int, default=0)
    _add_cap_flags(p_cmp)
    p_cmp.add_argument("--out", default="-")
    p_cmp.set_defaults(func=cmd_experiment_compare)

    p_sweep = exp_sub.add_parser("sweep", help="cluster-size sweep with solver metrics")
    _add_graph_flags(p_sweep)
    p_sweep.add_argument("--sizes", type=str, default="3..20",
                         help="points-per-cluster values, e.g. 3..20 or 5,10")
    p_sweep.add_argument("--runs", type=int, default=10)
    p_sweep.add_argument("--seed", type=int, default=0)
    p_sweep.add_argument("--levels", type=int, default=2)
    p_sweep.add_argument("--coarse-floor", type=int, default=100,
                         help="stop coarsening at this many unknowns")
    p_sweep.add_argument("--out", default="-")
    p_sweep.set_defaults(func=cmd_experiment_sweep)

    p_demo = exp_sub.add_parser("seed-demo", help="1D seeding study energy trace")
    p_demo.add_argument("--n", type=int, default=30)
    p_demo.add_argument("--nclusters", type=int, default=10)
    p_demo.add_argument("--worst", action="store_true",
                        help="stack all centers at the left end")
    p_demo.add_argument("--seed", type=int, default=0)
    _add_cap_flags(p_demo)
    p_demo.add_argument("--out", default="-")
    p_demo.set_defaults(func=cmd_experiment_seed_demo)

    p_amg = sub.add_parser("amg", help="build a hierarchy and measure convergence")
    _add_graph_flags(p_amg)
    p_amg.add_argument("--levels", type=int, default=2)
    p_amg.add_argument("--method", choices=METHODS, default="rebalanced")
    p_amg.add_argument("--points-per-cluster", type=int, default=10)
    p_amg.add_argument("--coarse-floor", type=int, default=100,
                       help="stop coarsening at this many unknowns")
    p_amg.add_argument("--seed", type=int, default=0)
    p_amg.add_argument("--nu", type=int, default=2, help="relaxation sweeps")
    p_amg.add_argument("--rtol", type=float, default=1e-10)
    p_amg.add_argument("--maxiter", type=int, default=50)
    p_amg.add_argument("--beta", action="store_true",
                       help="report the per-cluster approximation constants")
    p_amg.add_argument("--json", dest="json_out", default="-")
    p_amg.set_defaults(func=cmd_amg)

    return parser


def _add_graph_flags(parser):
    grp = parser.add_mutually_exclusive_group(required=False)
    grp.add_argument("--path", type=int, default=None, metavar="N",
                     help="unit-weight chain of N nodes")
    grp.add_argument("--grid", type=int, nargs=2, default=None,
                     metavar=("NX", "NY"), help="unit-weight lattice")
    grp.add_argument("--mtx", type=str, default=None,
                     help="Matrix Market file")
    parser.add_argument("--strength", choices=("abs-offdiag", "unit"),
                        default="abs-offdiag")
    parser.add_argument("--padding", type=float, default=0.1)


def _add_cap_flags(parser):
    parser.add_argument("--tmax", type=int, default=5)
    parser.add_argument("--touter", type=int, default=4,
                        help="rebalance sweeps (rebalanced method only)")
    parser.add_argument("--tbfmax", type=int, default=None)
    parser.add_argument("--tol", type=float, default=1e-12)
    parser.add_argument("--no-tiebreak", action="store_true")


def _build_graph(args, parser_error):
    if args.path is not None:
        return path_graph(args.path)
    if args.grid is not None:
        return grid_graph(args.grid[0], args.grid[1])
    if args.mtx is not None:
        a = load_matrix_market(args.mtx)
        return strength_to_distance(a, args.strength, args.padding)
    parser_error("one of --path/--grid/--mtx is required")
    return None


def _build_matrix(args, parser_error):
    if args.path is not None:
        return poisson_path(args.path)
    if args.grid is not None:
        return poisson_grid(args.grid[0], args.grid[1])
    if args.mtx is not None:
        return load_matrix_market(args.mtx)
    parser_error("one of --path/--grid/--mtx is required")
    return None


def _parse_int_list(text):
    out = []
    for token in text.split(","):
        token = token.strip()
        if ".." in token:
            lo, hi = token.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        elif token:
            out.append(int(token))
    return out


def _draw_centers(rng, n_node, n_clusters):
    return np.sort(rng.choice(n_node, size=n_clusters, replace=False)) + 1


def _run_method(g, method, centers, args):
    """Run one clustering method and return (m, c) arrays."""
    tiebreak = not args.no_tiebreak
    if method == "standard":
        return lloyd_cluster(g, centers, args.tmax)
    if method == "balanced":
        st, _ = balanced_lloyd_cluster(
            g, centers, args.tmax, args.tbfmax, args.tol, tiebreaking=tiebreak
        )
        return st.m, st.c
    if method == "rebalanced":
        st, _ = rebalanced_lloyd_cluster(
            g, centers, args.tmax, args.touter, args.tbfmax, args.tol,
            tiebreaking=tiebreak,
        )
        return st.m, st.c
    if method == "greedy":
        return greedy_cluster(g)
    return mis2_cluster(g)


def _write_text(path, text):
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="ascii", newline="") as fh:
            fh.write(text)


def _json_report(payload):
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _rows_to_csv(header, rows):
    import io

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def cmd_cluster(args):
    g = _build_graph(args, _arg_error)
    method = args.method

    if method in ("greedy", "mis2"):
        if args.nclusters is not None or args.centers is not None:
            print(
                f"warning: {method} clustering chooses its own cluster count; "
                "--nclusters/--centers ignored",
                file=sys.stderr,
            )
        centers = None
    elif args.centers is not None:
        centers = np.asarray(_parse_int_list(args.centers), dtype=np.int64)
    else:
        if args.nclusters is None:
            _arg_error("--nclusters or --centers is required for Lloyd methods")
        rng = np.random.default_rng(args.seed)
        centers = _draw_centers(rng, g.n_node, args.nclusters)

    m, c = _run_method(g, method, centers, args)

    report = validate_clustering(g, m, c)
    if not report:
        print(f"validation failed: {report.message}", file=sys.stderr)
        return EXIT_VALIDATION

    st, paths = state_from_membership(g, m, c)
    stats = cluster_stats(g, st, paths)
    payload = {
        "schema": SCHEMA_VERSION,
        "command": "cluster",
        "method": method,
        "n_node": g.n_node,
        "n_cluster": int(c.shape[0] - 1),
        "centers": [int(x) for x in c[1:]],
        "stats": stats.to_dict(),
    }
    _write_text(args.json_out, _json_report(payload))
    if args.csv_out is not None:
        rows = [(i, int(m[i])) for i in range(1, g.n_node + 1)]
        _write_text(args.csv_out, _rows_to_csv(("node", "cluster"), rows))
    return EXIT_OK


def _stats_for(g, m, c):
    st, paths = state_from_membership(g, m, c)
    return cluster_stats(g, st, paths)


def cmd_experiment_tiebreak(args):
    g = _build_graph(args, _arg_error)
    n_clusters = max(1, int(args.frac * g.n_node))
    rows = []
    for run in range(args.runs):
        rng = np.random.default_rng([args.seed, run])
        centers = _draw_centers(rng, g.n_node, n_clusters)
        for flag in (1, 0):
            st, paths = balanced_lloyd_cluster(
                g, centers, args.tmax, args.tbfmax, args.tol,
                tiebreaking=bool(flag),
            )
            stats = cluster_stats(g, st, paths)
            rows.append(
                (run, flag, stats.zero_diameter_count,
                 repr(stats.size_std), repr(stats.energy))
            )
    header = ("run", "tiebreak", "zero_diameter_clusters", "size_std", "energy")
    _write_text(args.out, _rows_to_csv(header, rows))
    return EXIT_OK


def cmd_experiment_compare(args):
    g = _build_graph(args, _arg_error)
    n_clusters = max(1, int(args.frac * g.n_node))
    rows = []
    for run in range(args.runs):
        rng = np.random.default_rng([args.seed, run])
        centers = _draw_centers(rng, g.n_node, n_clusters)
        for method in ("standard", "balanced", "rebalanced"):
            m, c = _run_method(g, method, centers, args)
            stats = _stats_for(g, m, c)
            rows.append(
                (run, method, repr(stats.energy), repr(stats.size_std),
                 repr(stats.diameter_std), stats.zero_diameter_count)
            )
    header = ("run", "method", "energy", "size_std", "diameter_std",
              "zero_diameter_clusters")
    _write_text(args.out, _rows_to_csv(header, rows))
    return EXIT_OK


def cmd_experiment_sweep(args):
    a = _build_matrix(args, _arg_error)
    sizes = _parse_int_list(args.sizes)
    rows = []
    for ppc in sizes:
        for run in range(args.runs):
            h = sa_setup(
                a, args.levels, "rebalanced",
                points_per_cluster=ppc, seed=[args.seed, ppc, run],
                coarse_size_floor=args.coarse_floor,
            )
            result = convergence_factor(h, seed=run, max_iters=50, rtol=1e-10)
            chi = cycle_complexity(h)
            wpd = work_per_digit(chi, result.rho) if result.rho < 1 else float("inf")
            rows.append(
                (ppc, run, repr(result.rho), repr(chi), repr(wpd),
                 result.iterations, int(result.converged))
            )
    header = ("points_per_cluster", "run", "rho", "chi", "wpd",
              "iterations", "converged")
    _write_text(args.out, _rows_to_csv(header, rows))
    return EXIT_OK


def cmd_experiment_seed_demo(args):
    g = path_graph(args.n)
    if args.worst:
        centers = np.arange(1, args.nclusters + 1, dtype=np.int64)
    else:
        rng = np.random.default_rng(args.seed)
        centers = _draw_centers(rng, g.n_node, args.nclusters)
    trace = []
    rebalanced_lloyd_cluster(
        g, centers, args.tmax, args.touter, args.tbfmax, args.tol,
        tiebreaking=not args.no_tiebreak, trace=trace,
    )
    rows = []
    step = 0
    for entry in trace:
        if entry.event == "init":
            continue
        rows.append((step, entry.event, repr(entry.energy), repr(entry.energy_delta)))
        step += 1
    header = ("step", "event", "energy", "energy_delta")
    _write_text(args.out, _rows_to_csv(header, rows))
    return EXIT_OK


def cmd_amg(args):
    a = _build_matrix(args, _arg_error)
    h = sa_setup(
        a, args.levels, args.method,
        points_per_cluster=args.points_per_cluster, seed=args.seed,
        coarse_size_floor=args.coarse_floor,
    )
    if h.n_levels == 1:
        v_cycle(h, np.zeros(a.shape[0]), np.zeros(a.shape[0]), args.nu)
        payload = {
            "schema": SCHEMA_VERSION,
            "command": "amg",
            "method": args.method,
            "levels": h.level_sizes(),
            "hierarchy": h.to_dict(),
            "rho": 0.0,
            "chi": cycle_complexity(h, args.nu),
            "wpd": 0.0,
            "iterations": 1,
            "converged": True,
        }
        _write_text(args.json_out, _json_report(payload))
        return EXIT_OK

    result = convergence_factor(h, seed=args.seed, max_iters=args.maxiter,
                                rtol=args.rtol, nu=args.nu)
    chi = cycle_complexity(h, args.nu)
    payload = {
        "schema": SCHEMA_VERSION,
        "command": "amg",
        "method": args.method,
        "levels": h.level_sizes(),
        "hierarchy": h.to_dict(),
        "rho": result.rho,
        "chi": chi,
        "iterations": result.iterations,
        "converged": result.converged,
    }
    if result.rho < 1.0:
        payload["wpd"] = work_per_digit(chi, result.rho)
    if args.beta:
        beta, beta_per = beta_localization(a, h.interpolations[0], h.memberships[0])
        payload["beta"] = beta
        payload["beta_per_cluster"] = [float(x) for x in beta_per[1:]]
        payload["beta_max"] = float(np.max(beta_per[1:]))
    _write_text(args.json_out, _json_report(payload))
    if result.rho >= 1.0:
        print(f"divergent: rho={result.rho}", file=sys.stderr)
        return EXIT_DIVERGED
    return EXIT_OK


def _arg_error(message):
    print(f"error: {message}", file=sys.stderr)
    raise SystemExit(2)


if __name__ == "__main__":
    entry_point()
