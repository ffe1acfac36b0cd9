"""Command-line front door: generate synthetic data, cluster CSV matrices,
run experiment grids.

Diagnostics go to stderr; machine-readable output goes to files and stdout.
Exit status is 0 iff no error occurred.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

try:
    import tomllib  # Python >= 3.11
except ModuleNotFoundError:  # pragma: no cover - depends on interpreter
    import tomli as tomllib

from . import dataio, geometry, harness, metrics, spectral, synthgen
from .errors import GreedyScError
from .recovery import gsr
from .neighbors import NsnParams, fnsn

_MODEL_FLAGS = {"fully-random": synthgen.FULLY_RANDOM, "semi-random": synthgen.SEMI_RANDOM}
_ALGO_FLAGS = {"nsn-gsr": harness.ALGO_NSN_GSR, "nsn-spectral": harness.ALGO_NSN_SPECTRAL}

# TOML keys mirror ExperimentConfig fields plus the grid controls.
_TOML_KEYS = {
    "p", "d", "L", "n", "model", "algorithm", "algo", "maxaff", "K", "k_max", "kmax",
    "eps", "membership_tol", "trials", "seed", "n_over_d", "p_values", "fixed_ratio",
    "budget", "force", "threads", "out_csv", "out_json",
}


def _float_list(text):
    if isinstance(text, (list, tuple)):
        return [float(v) for v in text]
    return [float(v) for v in str(text).split(",") if v.strip()]


def _int_list(text):
    if isinstance(text, (list, tuple)):
        return [int(v) for v in text]
    return [int(v) for v in str(text).split(",") if v.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gsc",
        description="Greedy subspace clustering: generate, cluster, experiment.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a synthetic labeled dataset")
    gen.add_argument("--model", choices=sorted(_MODEL_FLAGS), required=True)
    gen.add_argument("--p", type=int, required=True, help="ambient dimension")
    gen.add_argument("--d", type=int, required=True, help="subspace dimension")
    gen.add_argument("--L", type=int, required=True, help="number of subspaces")
    gen.add_argument("--n", type=int, required=True, help="points per subspace")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--maxaff", type=float,
                     help="pairwise affinity target (semi-random model only)")
    gen.add_argument("--outdir", default=".",
                     help="directory for points.csv, labels.csv, bases.json")
    gen.set_defaults(func=cmd_generate)

    clu = sub.add_parser("cluster", help="cluster a CSV matrix of points")
    clu.add_argument("--points", required=True, help="CSV of N rows x p columns, no header")
    clu.add_argument("--algo", choices=sorted(_ALGO_FLAGS), required=True)
    clu.add_argument("--d", type=int, help="subspace dimension (required for nsn-gsr)")
    clu.add_argument("--K", type=int, help="neighbors per point (default 2*d)")
    clu.add_argument("--kmax", type=int, help="max selection-subspace dimension (default K)")
    clu.add_argument("--L", type=int, help="number of clusters; estimated when omitted")
    clu.add_argument("--eps", type=float, default=1e-6, help="coverage bound for nsn-gsr")
    clu.add_argument("--membership-tol", type=float, default=1e-10)
    clu.add_argument("--truth", help="labels CSV; prints CE/NSE as JSON when given")
    clu.add_argument("--seed", type=int, default=0, help="k-means seed (nsn-spectral)")
    clu.add_argument("--unnormalized", action="store_true",
                     help="embed with the unnormalized adjacency")
    clu.add_argument("--outdir", default=".",
                     help="directory for neighbors.csv and labels_pred.csv")
    clu.set_defaults(func=cmd_cluster)

    exp = sub.add_parser("experiment", help="run a seeded Monte-Carlo grid")
    exp.add_argument("--config", help="TOML file supplying any flag; command line wins")
    exp.add_argument("--model", choices=sorted(_MODEL_FLAGS))
    exp.add_argument("--algo", dest="algorithm", choices=sorted(_ALGO_FLAGS))
    exp.add_argument("--p", type=int)
    exp.add_argument("--d", type=int)
    exp.add_argument("--L", type=int)
    exp.add_argument("--n", type=int)
    exp.add_argument("--K", type=int)
    exp.add_argument("--kmax", dest="k_max", type=int)
    exp.add_argument("--eps", type=float)
    exp.add_argument("--membership-tol", dest="membership_tol", type=float)
    exp.add_argument("--maxaff", type=float)
    exp.add_argument("--trials", type=int)
    exp.add_argument("--seed", type=int)
    exp.add_argument("--n-over-d", dest="n_over_d", help="comma list, e.g. 2,4,8,16")
    exp.add_argument("--p-values", dest="p_values", help="comma list, e.g. 10,15,20")
    exp.add_argument("--fixed-ratio", dest="fixed_ratio", action="store_true",
                     help="derive each cell's d from the base d/p ratio")
    exp.add_argument("--budget", type=float, help="cost guardrail (N^2*p*K*trials sum)")
    exp.add_argument("--force", action="store_true", help="override the budget guardrail")
    exp.add_argument("--threads", type=int,
                     help="worker processes (default: GSC_THREADS or 1)")
    exp.add_argument("--out-csv", dest="out_csv", default="results.csv")
    exp.add_argument("--out-json", dest="out_json", default="results.json")
    exp.set_defaults(func=cmd_experiment)
    return parser


def cmd_generate(args) -> None:
    model = _MODEL_FLAGS[args.model]
    if model == synthgen.SEMI_RANDOM:
        if args.maxaff is None:
            raise GreedyScError("--maxaff is required for the semi-random model")
        bases = synthgen.make_equi_affinity_bases(args.p, args.d, args.L, args.maxaff)
        inst = synthgen.gen_semi_random(bases, args.n, args.seed)
    else:
        inst = synthgen.gen_fully_random(args.p, args.d, args.L, args.n, args.seed)
    os.makedirs(args.outdir, exist_ok=True)
    points_path = os.path.join(args.outdir, "points.csv")
    labels_path = os.path.join(args.outdir, "labels.csv")
    bases_path = os.path.join(args.outdir, "bases.json")
    dataio.write_points_csv(points_path, inst.points)
    dataio.write_labels_csv(labels_path, inst.labels)
    meta = {"model": inst.model, "seed": inst.seed, "n": inst.n}
    if args.maxaff is not None:
        meta["maxaff"] = args.maxaff
    dataio.write_bases_json(bases_path, inst.bases, **meta)
    print(f"wrote {points_path}, {labels_path}, {bases_path}", file=sys.stderr)


def cmd_cluster(args) -> None:
    algo = _ALGO_FLAGS[args.algo]
    raw = dataio.read_points_csv(args.points)
    pts = geometry.normalize(raw)
    if args.K is not None:
        K = args.K
    elif args.d is not None:
        K = 2 * args.d  # practical default for near-subspace data
    else:
        raise GreedyScError("either --K or --d is required to choose the neighbor count")
    kmax = args.kmax if args.kmax is not None else K
    params = NsnParams(K=K, k_max=kmax, membership_tol=args.membership_tol)
    W = fnsn(pts, params)
    os.makedirs(args.outdir, exist_ok=True)
    edges_path = os.path.join(args.outdir, "neighbors.csv")
    labels_path = os.path.join(args.outdir, "labels_pred.csv")
    dataio.write_edges_csv(edges_path, W)
    report: dict = {"algo": args.algo, "n_points": int(pts.shape[0]), "K": K, "kmax": kmax}
    if algo == harness.ALGO_NSN_GSR:
        if args.d is None:
            raise GreedyScError("--d is required for nsn-gsr")
        result = gsr(pts, W, args.d, eps=args.eps, L=args.L)
        labels = result.labels
        if args.L is None:
            report["estimated_L"] = len(result.subspaces)
    else:
        Z = spectral.build_affinity(W)
        L = args.L
        if L is None:
            L = spectral.estimate_clusters(Z)
            report["estimated_L"] = L
        embedding = spectral.spectral_embed(Z, L, normalized=not args.unnormalized)
        labels = spectral.kmeans(embedding, L, replicates=harness.KMEANS_REPLICATES,
                                 rng=np.random.default_rng(args.seed))
    dataio.write_labels_csv(labels_path, labels)
    if args.truth:
        truth = dataio.read_labels_csv(args.truth)
        report["ce"] = metrics.clustering_error(labels, truth)
        report["nse"] = metrics.neighborhood_selection_error(W, truth)
    print(f"wrote {edges_path}, {labels_path}", file=sys.stderr)
    print(json.dumps(report))


def _load_config(path) -> dict:
    with open(path, "rb") as fh:
        doc = tomllib.load(fh)
    unknown = set(doc) - _TOML_KEYS
    if unknown:
        raise GreedyScError(f"unknown config keys: {sorted(unknown)}")
    return {("algorithm" if k == "algo" else "k_max" if k == "kmax" else k): v
            for k, v in doc.items()}


def _flag_name(value: str, table: dict, what: str) -> str:
    name = str(value).replace("_", "-")
    if name not in table:
        raise GreedyScError(f"unknown {what} {value!r}; choose from {sorted(table)}")
    return name


def cmd_experiment(args) -> None:
    doc = _load_config(args.config) if args.config else {}

    def setting(name, default=None):
        value = getattr(args, name)  # command line wins over the config file
        if value is None:
            value = doc.get(name, default)
        return value

    required = {k: setting(k) for k in ("model", "algorithm", "p", "d", "L", "n")}
    missing = [k for k, v in required.items() if v is None]
    if missing:
        raise GreedyScError(f"missing experiment settings: {', '.join(missing)}")
    kwargs = dict(required)
    kwargs["model"] = _MODEL_FLAGS[_flag_name(kwargs["model"], _MODEL_FLAGS, "model")]
    kwargs["algorithm"] = _ALGO_FLAGS[_flag_name(kwargs["algorithm"], _ALGO_FLAGS, "algorithm")]
    for field in ("maxaff", "K", "k_max", "eps", "membership_tol", "trials", "seed"):
        value = setting(field)
        if value is not None:
            kwargs[field] = value
    base = harness.ExperimentConfig(**kwargs)
    n_over_d = setting("n_over_d")
    p_values = setting("p_values")
    threads = setting("threads")
    if threads is None:
        threads = int(os.environ.get("GSC_THREADS", "1"))
    cells = harness.run_grid(
        base,
        n_over_d=_float_list(n_over_d) if n_over_d is not None else None,
        p_values=_int_list(p_values) if p_values is not None else None,
        fixed_ratio=bool(args.fixed_ratio or doc.get("fixed_ratio", False)),
        budget=float(setting("budget", harness.DEFAULT_BUDGET)),
        force=bool(args.force or doc.get("force", False)),
        workers=int(threads),
    )
    out_csv = args.out_csv if args.out_csv != "results.csv" else doc.get("out_csv", args.out_csv)
    out_json = (args.out_json if args.out_json != "results.json"
                else doc.get("out_json", args.out_json))
    with open(out_csv, "w", encoding="ascii") as fh:
        fh.write(harness.grid_to_csv(cells))
    with open(out_json, "w", encoding="ascii") as fh:
        fh.write(harness.grid_to_json(cells, base))
    print(f"wrote {out_csv}, {out_json} ({len(cells)} cells)", file=sys.stderr)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        args.func(args)
    except GreedyScError as exc:
        print(f"gsc: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"gsc: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
