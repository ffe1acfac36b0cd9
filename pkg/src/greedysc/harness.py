"""Seeded Monte-Carlo experiment grids over the synthetic models.

One cell = one (model, algorithm, p, d, L, n) configuration run for a number
of trials; a grid is the Cartesian product of n/d ratios and ambient
dimensions around a base configuration. Per-trial seeds are splitmix64 mixes
of (config seed, cell key, trial index), where the cell key depends only on
the cell's own parameters so a cell reproduces identically inside any grid.
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from . import metrics, spectral, synthgen
from .errors import BadParams, BudgetExceeded, TrialFailed
from .recovery import gsr
from .neighbors import NsnParams, fnsn

ALGO_NSN_GSR = "nsn_gsr"
ALGO_NSN_SPECTRAL = "nsn_spectral"
ALGORITHMS = (ALGO_NSN_GSR, ALGO_NSN_SPECTRAL)
MODELS = (synthgen.FULLY_RANDOM, synthgen.SEMI_RANDOM)

DEFAULT_BUDGET = 1e10  # sum over cells of N^2 * p * K * trials
KMEANS_REPLICATES = 10

CSV_HEADER = ("model,algo,p,d,L,n,K,kmax,trials,"
              "mean_ce,mean_nse,exact_rate,mean_nsn_s,mean_cluster_s")

_MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    """One step of the splitmix64 sequence; a uniform 64-bit mixer."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def _mix(*values: int) -> int:
    h = 0
    for v in values:
        h = splitmix64(h ^ (int(v) & _MASK64))
    return h


def trial_seed(seed: int, cell_key: int, trial: int) -> int:
    """Deterministic 64-bit seed for one trial of one cell."""
    return _mix(seed, cell_key, trial)


@dataclass(frozen=True)
class ExperimentConfig:
    """One experiment cell: model, algorithm, dimensions, and trial bookkeeping.

    K and k_max default per the algorithm and model: nsn_spectral and
    fully-random nsn_gsr use K = k_max = d; semi-random nsn_gsr uses
    K = d - 1 with k_max = ceil(2 ln d) capped at K.
    """

    p: int
    d: int
    L: int
    n: int
    model: str = synthgen.FULLY_RANDOM
    algorithm: str = ALGO_NSN_GSR
    maxaff: float | None = None  # semi-random only
    K: int | None = None
    k_max: int | None = None
    eps: float = 1e-6
    membership_tol: float = 1e-10
    trials: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.model not in MODELS:
            raise BadParams(f"unknown model {self.model!r}; choose from {MODELS}")
        if self.algorithm not in ALGORITHMS:
            raise BadParams(f"unknown algorithm {self.algorithm!r}; choose from {ALGORITHMS}")
        if min(self.p, self.d, self.L, self.n, self.trials) < 1:
            raise BadParams("p, d, L, n, and trials must all be positive")
        if self.d > self.p:
            raise BadParams(f"need d <= p, got d={self.d}, p={self.p}")
        if self.model == synthgen.SEMI_RANDOM:
            if self.maxaff is None or not 0.0 <= self.maxaff < 1.0:
                raise BadParams("semi-random model needs maxaff in [0, 1)")
        if self.seed < 0:
            raise BadParams("seed must be nonnegative")

    def nsn_params(self) -> NsnParams:
        semi_gsr = (self.algorithm == ALGO_NSN_GSR and self.model == synthgen.SEMI_RANDOM)
        K = self.K
        if K is None:
            K = max(1, self.d - 1) if semi_gsr else self.d
        k_max = self.k_max
        if k_max is None:
            if semi_gsr:
                k_max = min(max(1, math.ceil(2 * math.log(self.d))), K)
            else:
                k_max = min(self.d, K)
        return NsnParams(K=K, k_max=k_max, membership_tol=self.membership_tol)


@dataclass(frozen=True)
class CellResult:
    """Aggregates over one cell's trials."""

    mean_ce: float
    mean_nse: float
    exact_rate: float
    mean_nsn_s: float
    mean_cluster_s: float
    trials: int

    @property
    def mean_runtime_s(self) -> float:
        return self.mean_nsn_s + self.mean_cluster_s


@dataclass(frozen=True)
class GridCell:
    cfg: ExperimentConfig
    result: CellResult


def _cell_key(cfg: ExperimentConfig) -> int:
    return _mix(cfg.p, cfg.d, cfg.L, cfg.n)


def _run_trial(cfg: ExperimentConfig, tseed: int):
    if cfg.model == synthgen.FULLY_RANDOM:
        inst = synthgen.gen_fully_random(cfg.p, cfg.d, cfg.L, cfg.n, seed=tseed)
    else:
        bases = synthgen.make_equi_affinity_bases(cfg.p, cfg.d, cfg.L, cfg.maxaff)
        inst = synthgen.gen_semi_random(bases, cfg.n, seed=tseed)
    params = cfg.nsn_params()
    t0 = time.perf_counter()
    W = fnsn(inst.points, params)
    t_nsn = time.perf_counter() - t0
    t0 = time.perf_counter()
    if cfg.algorithm == ALGO_NSN_GSR:
        labels = gsr(inst.points, W, cfg.d, eps=cfg.eps, L=cfg.L).labels
    else:
        rng = np.random.default_rng(np.random.SeedSequence(tseed, spawn_key=(2,)))
        labels = spectral.spectral_cluster(W, L=cfg.L, rng=rng, replicates=KMEANS_REPLICATES)
    t_cluster = time.perf_counter() - t0
    ce = metrics.clustering_error(labels, inst.labels)
    nse = metrics.neighborhood_selection_error(W, inst.labels)
    return ce, nse, t_nsn, t_cluster


def run_cell(cfg: ExperimentConfig, workers: int = 1) -> CellResult:
    """Run one cell's trials and aggregate means and the exact-clustering rate."""
    key = _cell_key(cfg)
    seeds = [trial_seed(cfg.seed, key, t) for t in range(cfg.trials)]
    rows = []
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_run_trial, cfg, s) for s in seeds]
            for t, fut in enumerate(futures):
                try:
                    rows.append(fut.result())
                except Exception as exc:
                    raise TrialFailed(t) from exc
    else:
        for t, s in enumerate(seeds):
            try:
                rows.append(_run_trial(cfg, s))
            except Exception as exc:
                raise TrialFailed(t) from exc
    ces, nses, t_nsn, t_cluster = (np.array(col) for col in zip(*rows))
    return CellResult(
        mean_ce=float(ces.mean()),
        mean_nse=float(nses.mean()),
        exact_rate=float((ces == 0.0).mean()),
        mean_nsn_s=float(t_nsn.mean()),
        mean_cluster_s=float(t_cluster.mean()),
        trials=cfg.trials,
    )


def grid_configs(base: ExperimentConfig, n_over_d=None, p_values=None,
                 fixed_ratio: bool = False) -> list[ExperimentConfig]:
    """Cartesian product of cells around a base configuration.

    With fixed_ratio=True the subspace dimension in each cell is derived from
    the base's d/p ratio; n is always n_over_d * d, rounded.
    """
    if p_values is None:
        p_values = [base.p]
    if n_over_d is None:
        n_over_d = [base.n / base.d]
    ratio = base.d / base.p
    cfgs = []
    for p in p_values:
        d = max(1, int(round(p * ratio))) if fixed_ratio else base.d
        if d > p:
            raise BadParams(f"derived d={d} exceeds p={p}")
        for r in n_over_d:
            n = max(1, int(round(r * d)))
            cfgs.append(replace(base, p=int(p), d=d, n=n))
    return cfgs


def predicted_cost(cfgs) -> float:
    """Guardrail cost proxy: sum over cells of N^2 * p * K * trials."""
    total = 0.0
    for c in cfgs:
        N = c.n * c.L
        total += float(N) ** 2 * c.p * c.nsn_params().K * c.trials
    return total


def run_grid(base: ExperimentConfig, n_over_d=None, p_values=None,
             fixed_ratio: bool = False, budget: float = DEFAULT_BUDGET,
             force: bool = False, workers: int = 1) -> list[GridCell]:
    """Run every cell of the grid; refuses grids above the cost budget unless forced."""
    cfgs = grid_configs(base, n_over_d, p_values, fixed_ratio)
    cost = predicted_cost(cfgs)
    if not force and cost > budget:
        raise BudgetExceeded(cost, budget)
    return [GridCell(c, run_cell(c, workers=workers)) for c in cfgs]


def _cell_record(cell: GridCell) -> dict:
    params = cell.cfg.nsn_params()
    r = cell.result
    return {
        "model": cell.cfg.model,
        "algo": cell.cfg.algorithm,
        "p": cell.cfg.p,
        "d": cell.cfg.d,
        "L": cell.cfg.L,
        "n": cell.cfg.n,
        "K": params.K,
        "kmax": params.k_max,
        "trials": r.trials,
        "mean_ce": r.mean_ce,
        "mean_nse": r.mean_nse,
        "exact_rate": r.exact_rate,
        "mean_nsn_s": r.mean_nsn_s,
        "mean_cluster_s": r.mean_cluster_s,
    }


def grid_to_csv(cells) -> str:
    """Long-format CSV, one row per cell; floats at 6 significant digits."""
    lines = [CSV_HEADER]
    for cell in cells:
        rec = _cell_record(cell)
        fields = []
        for key in CSV_HEADER.split(","):
            v = rec[key]
            fields.append(f"{v:.6g}" if isinstance(v, float) else str(v))
        lines.append(",".join(fields))
    return "\n".join(lines) + "\n"


def grid_to_json(cells, base: ExperimentConfig | None = None) -> str:
    """JSON summary with full-precision floats."""
    doc: dict = {"cells": [_cell_record(c) for c in cells]}
    if base is not None:
        doc["base"] = {
            "model": base.model, "algorithm": base.algorithm, "p": base.p, "d": base.d,
            "L": base.L, "n": base.n, "maxaff": base.maxaff, "K": base.K,
            "k_max": base.k_max, "eps": base.eps, "membership_tol": base.membership_tol,
            "trials": base.trials, "seed": base.seed,
        }
    return json.dumps(doc, indent=2) + "\n"
