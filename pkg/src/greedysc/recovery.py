"""Greedy subspace recovery.

Each point's neighborhood is turned into a candidate subspace (its principal
d-dimensional fit); candidates are then picked greedily by how many points
they cover within an error bound, and finally every point is labeled by the
picked subspace it projects onto most.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import geometry
from .errors import Exhausted, RankDeficient, TooFewNeighbors


@dataclass
class RecoveryResult:
    """Picked subspace estimates, per-point labels, and the picked row indices."""

    subspaces: list[np.ndarray]
    labels: np.ndarray
    picked_indices: list[int]


def candidate_subspaces(points, W, d: int) -> list[np.ndarray]:
    """Per-point candidate subspaces: the principal d-fit of each neighborhood."""
    Y = np.asarray(points, dtype=float)
    Wb = np.asarray(W, dtype=bool)
    out = []
    for i in range(Wb.shape[0]):
        idx = np.flatnonzero(Wb[i])
        if idx.size < d:
            raise TooFewNeighbors(i)
        try:
            out.append(geometry.top_d_principal(Y[idx], d))
        except RankDeficient as exc:
            raise RankDeficient(exc.effective_rank, detail=f"neighborhood of row {i}") from exc
    return out


def gsr_select(points, candidates, eps: float, L: int | None = None,
               count_uncovered_only: bool = False):
    """Greedy coverage rounds; returns (subspaces, picked_indices).

    A candidate covers point j when the projection norm of y_j onto it is at
    least 1 - eps. Coverage is counted over all points (set
    count_uncovered_only=True to count only points not yet covered); each
    round picks the best-covering candidate among the uncovered ones, ties to
    the smallest index, and removes the points it covers. With L given the
    loop runs exactly L rounds and raises Exhausted (carrying the partial
    pick) if every point is covered first; with L unknown it runs until all
    points are covered.
    """
    Y = np.asarray(points, dtype=float)
    N = Y.shape[0]
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    if len(candidates) != N:
        raise ValueError(f"need one candidate per point, got {len(candidates)} for N={N}")
    thresh = (1.0 - eps) ** 2  # compare squared norms
    cover = np.zeros((N, N), dtype=bool)
    for i, cand in enumerate(candidates):
        cover[i] = geometry.proj_sqnorms(cand, Y) >= thresh
    counts = cover.sum(axis=1)
    active = np.ones(N, dtype=bool)  # points not yet covered by a pick
    picked: list[int] = []
    subspaces: list[np.ndarray] = []
    while active.any():
        if L is not None and len(picked) == L:
            break
        if count_uncovered_only:
            c = cover[:, active].sum(axis=1)
        else:
            c = counts
        i_star = int(np.argmax(np.where(active, c, -1)))
        picked.append(i_star)
        subspaces.append(candidates[i_star])
        active &= ~cover[i_star]
        active[i_star] = False  # progress even if a candidate misses itself
    if L is not None and len(picked) < L:
        raise Exhausted(subspaces, picked)
    return subspaces, picked


def gsr_label(points, subspaces) -> np.ndarray:
    """Label every point by the subspace of maximal projection norm (ties to smallest)."""
    if not subspaces:
        raise ValueError("at least one subspace is required")
    Y = np.asarray(points, dtype=float)
    scores = np.column_stack([geometry.proj_sqnorms(b, Y) for b in subspaces])
    return np.argmax(scores, axis=1)


def gsr(points, W, d: int, eps: float = 1e-6, L: int | None = None,
        count_uncovered_only: bool = False) -> RecoveryResult:
    """Full recovery: candidates, greedy selection, nearest-subspace labeling.

    If selection exhausts before picking L subspaces, the raised Exhausted
    error carries the partial RecoveryResult on its `result` attribute.
    """
    cands = candidate_subspaces(points, W, d)
    try:
        subspaces, picked = gsr_select(points, cands, eps, L, count_uncovered_only)
    except Exhausted as exc:
        if exc.subspaces:
            exc.result = RecoveryResult(
                exc.subspaces, gsr_label(points, exc.subspaces), exc.picked_indices
            )
        raise
    return RecoveryResult(subspaces, gsr_label(points, subspaces), picked)
