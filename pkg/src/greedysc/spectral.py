"""Spectral clustering on the symmetrized neighbor graph.

The neighborhood matrix W is symmetrized to Z = W + W^T, the cluster count can
be estimated from the largest gap between consecutive singular values of Z,
and points are clustered by k-means on the rows of the top eigenvectors of
the symmetric normalized adjacency (rows renormalized to unit length).
"""

from __future__ import annotations

import numpy as np


def build_affinity(W) -> np.ndarray:
    """Symmetrize a binary neighborhood matrix: Z[i, j] = W[i, j] + W[j, i]."""
    Wb = np.asarray(W)
    if Wb.ndim != 2 or Wb.shape[0] != Wb.shape[1]:
        raise ValueError(f"W must be square, got shape {Wb.shape}")
    Z = Wb.astype(np.int64)
    return Z + Z.T


def estimate_clusters(Z, max_L: int | None = None) -> int:
    """Cluster count by the largest gap between consecutive singular values of Z."""
    Zf = np.asarray(Z, dtype=float)
    N = Zf.shape[0]
    if max_L is None:
        max_L = min(N - 1, 20)
    if not 1 <= max_L <= N - 1:
        raise ValueError(f"need 1 <= max_L <= N-1, got max_L={max_L}, N={N}")
    s = np.linalg.svd(Zf, compute_uv=False)  # descending
    gaps = s[:max_L] - s[1:max_L + 1]
    return int(np.argmax(gaps)) + 1


def spectral_embed(Z, L: int, normalized: bool = True) -> np.ndarray:
    """Rows of the top-L eigenvectors of D^{-1/2} Z D^{-1/2}, row-normalized.

    With normalized=False the eigenvectors of Z itself are used instead.
    Rows of (near-)zero norm are left as zero.
    """
    Zf = np.asarray(Z, dtype=float)
    N = Zf.shape[0]
    if not 1 <= L <= N:
        raise ValueError(f"need 1 <= L <= N, got L={L}, N={N}")
    if normalized:
        deg = Zf.sum(axis=1)
        if np.any(deg <= 0):
            raise ValueError("graph has an isolated vertex; cannot normalize")
        inv_sqrt = 1.0 / np.sqrt(deg)
        M = Zf * inv_sqrt[:, None] * inv_sqrt[None, :]
    else:
        M = Zf
    _, vecs = np.linalg.eigh(M)  # ascending eigenvalues
    E = vecs[:, N - L:].copy()
    norms = np.linalg.norm(E, axis=1)
    keep = norms > 1e-12
    E[keep] /= norms[keep, None]
    E[~keep] = 0.0
    return E


def _kmeanspp_centers(X: np.ndarray, L: int, rng: np.random.Generator) -> np.ndarray:
    N = X.shape[0]
    centers = np.empty((L, X.shape[1]))
    centers[0] = X[int(rng.integers(N))]
    d2 = ((X - centers[0]) ** 2).sum(axis=1)
    for c in range(1, L):
        total = d2.sum()
        if total <= 0.0:  # all points coincide with a chosen center
            idx = int(rng.integers(N))
        else:
            idx = int(rng.choice(N, p=d2 / total))
        centers[c] = X[idx]
        d2 = np.minimum(d2, ((X - centers[c]) ** 2).sum(axis=1))
    return centers


def _lloyd(X: np.ndarray, L: int, rng: np.random.Generator, max_iter: int = 100):
    centers = _kmeanspp_centers(X, L, rng)
    labels = None
    for _ in range(max_iter):
        d2 = ((X[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
        new = np.argmin(d2, axis=1)
        if labels is not None and np.array_equal(new, labels):
            break
        labels = new
        for c in range(L):
            mask = labels == c
            if mask.any():
                centers[c] = X[mask].mean(axis=0)
    objective = float(((X - centers[labels]) ** 2).sum())
    return labels, objective


def kmeans(rows, L: int, replicates: int = 10, rng=None) -> np.ndarray:
    """Best-of-replicates Lloyd's algorithm with k-means++ seeding.

    Runs `replicates` independent seedings and keeps the labeling of minimal
    within-cluster sum of squares (ties keep the earliest replicate);
    each run converges when assignments stabilize, capped at 100 iterations.
    """
    X = np.atleast_2d(np.asarray(rows, dtype=float))
    if replicates < 1:
        raise ValueError(f"replicates must be at least 1, got {replicates}")
    if not 1 <= L:
        raise ValueError(f"L must be at least 1, got {L}")
    rng = np.random.default_rng(rng)
    best_labels, best_obj = None, np.inf
    for _ in range(replicates):
        labels, obj = _lloyd(X, L, rng)
        if obj < best_obj:
            best_labels, best_obj = labels, obj
    return best_labels


def spectral_cluster(W, L: int | None = None, rng=None, replicates: int = 10,
                     normalized: bool = True, max_L: int | None = None) -> np.ndarray:
    """Cluster a neighborhood matrix: symmetrize, embed, k-means.

    With L unknown it is first estimated from the singular-value gap of the
    symmetrized graph.
    """
    Z = build_affinity(W)
    if L is None:
        L = estimate_clusters(Z, max_L)
    E = spectral_embed(Z, L, normalized=normalized)
    return kmeans(E, L, replicates=replicates, rng=rng)
