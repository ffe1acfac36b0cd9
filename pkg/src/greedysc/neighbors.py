"""Nearest-subspace neighbor selection.

For each query point a subspace is grown greedily: starting from the query's
own span, the point with the largest projection onto the current subspace is
collected, the subspace is extended by it while its dimension is below k_max,
and the process repeats K times. `nsn` is the straightforward variant that
rebuilds the subspace from scratch at every step; `fnsn` accumulates squared
projections one orthogonal axis at a time and produces the same neighborhoods
at O(p*K*N^2) instead of O(p*K^2*N^2). `nsn_oracle` is the label-aware variant
whose success is equivalent to the greedy selection picking only same-class
neighbors for the query; it exists for test equivalence.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import geometry
from .errors import BadParams, ClassTooSmall

_UNIT_CHECK_TOL = 1e-9


@dataclass(frozen=True)
class NsnParams:
    """Neighbor count K, maximum subspace dimension k_max, membership tolerance."""

    K: int
    k_max: int
    membership_tol: float = 1e-10

    def __post_init__(self):
        if not 1 <= self.k_max <= self.K:
            raise BadParams(f"need 1 <= k_max <= K, got k_max={self.k_max}, K={self.K}")
        if not self.membership_tol > 0:
            raise BadParams(f"membership_tol must be positive, got {self.membership_tol}")


def _checked_points(points, params: NsnParams) -> np.ndarray:
    Y = np.asarray(points, dtype=float)
    if Y.ndim != 2:
        raise BadParams(f"points must be an (N, p) array, got shape {Y.shape}")
    N = Y.shape[0]
    if params.K > N - 1:
        raise BadParams(f"K={params.K} exceeds N-1={N - 1}")
    norms = np.linalg.norm(Y, axis=1)
    if np.max(np.abs(norms - 1.0), initial=0.0) > _UNIT_CHECK_TOL:
        raise BadParams("points must be unit-normalized (see geometry.normalize)")
    return Y


def nsn(points, params: NsnParams, return_selections: bool = False):
    """Neighborhood matrix by greedy nearest-subspace selection, from scratch.

    Returns an (N, N) boolean matrix W with W[i, i] = True; row i additionally
    flags the K selected points and every point whose squared projection onto
    the final selection subspace is at least 1 - membership_tol. Ties in the
    argmax go to the smallest index. With return_selections=True also returns,
    per query, the list of K selected indices in selection order.
    """
    Y = _checked_points(points, params)
    N = Y.shape[0]
    W = np.zeros((N, N), dtype=bool)
    selections: list[list[int]] = []
    for i in range(N):
        selected = [i]
        in_set = np.zeros(N, dtype=bool)
        in_set[i] = True
        U = None
        scores = None
        for k in range(1, params.K + 1):
            if k <= params.k_max:
                # span of everything collected so far; duplicates drop out
                U = geometry.span_basis(Y[selected])
            scores = geometry.proj_sqnorms(U, Y)
            j = int(np.argmax(np.where(in_set, -np.inf, scores)))
            selected.append(j)
            in_set[j] = True
        W[i] = in_set | (scores >= 1.0 - params.membership_tol)
        selections.append(selected[1:])
    if return_selections:
        return W, selections
    return W


def fnsn(points, params: NsnParams, return_selections: bool = False):
    """Incremental nearest-subspace neighbor selection.

    Produces the same neighborhoods as `nsn`: the running score of point j is
    the squared projection norm onto the current subspace, accumulated as
    |u_k . y_j|^2 each time a new orthogonal axis u_k joins the subspace.
    """
    Y = _checked_points(points, params)
    N, p = Y.shape
    W = np.zeros((N, N), dtype=bool)
    selections: list[list[int]] = []
    for i in range(N):
        axes = np.empty((params.k_max, p))
        axes[0] = Y[i]
        n_axes = 1
        n_used = 0  # axes already folded into the running scores
        P = np.zeros(N)
        in_set = np.zeros(N, dtype=bool)
        in_set[i] = True
        selected = []
        for k in range(1, params.K + 1):
            if k <= params.k_max and n_used < n_axes:
                P += (Y @ axes[n_used]) ** 2
                n_used += 1
            j = int(np.argmax(np.where(in_set, -np.inf, P)))
            selected.append(j)
            in_set[j] = True
            if k < params.k_max:
                A = axes[:n_axes]
                u = Y[j] - A.T @ (A @ Y[j])
                u -= A.T @ (A @ u)
                r = np.linalg.norm(u)
                if r >= geometry.RANK_TOL:  # skip points already in the span
                    axes[n_axes] = u / r
                    n_axes += 1
        W[i] = in_set | (P >= 1.0 - params.membership_tol)
        selections.append(selected)
    if return_selections:
        return W, selections
    return W


def nsn_oracle(points, truth, query: int, params: NsnParams) -> bool:
    """Label-aware greedy selection for one query; True means success.

    Selection is restricted to the query's own class. Returns False as soon as
    the best same-class squared projection fails to strictly beat the best
    squared projection among all points of other classes; success requires a
    strict win at every one of the K steps.
    """
    Y = _checked_points(points, params)
    N = Y.shape[0]
    labels = np.asarray(truth)
    if labels.shape != (N,):
        raise BadParams(f"truth must have shape ({N},), got {labels.shape}")
    same = labels == labels[query]
    if int(same.sum()) < params.K + 1:
        raise ClassTooSmall(
            f"class of query {query} has {int(same.sum())} members, need K+1={params.K + 1}"
        )
    other = ~same
    in_set = np.zeros(N, dtype=bool)
    in_set[query] = True
    selected = [query]
    U = None
    for k in range(1, params.K + 1):
        if k <= params.k_max:
            U = geometry.span_basis(Y[selected])
        scores = geometry.proj_sqnorms(U, Y)
        candidates = same & ~in_set
        best_same = float(np.max(scores[candidates]))
        best_other = float(np.max(scores[other])) if other.any() else -np.inf
        if best_same <= best_other:
            return False
        masked = np.where(candidates, scores, -np.inf)
        j = int(np.argmax(masked))
        selected.append(j)
        in_set[j] = True
    return True
