"""Subspace primitives: orthonormal bases, projections, principal subspaces, affinity.

A subspace is represented by a dense (p, k) array with orthonormal columns; a
point set by an (N, p) array with one unit-norm point per row. A basis is only
meaningful up to right-rotation and column sign, so every contract downstream
is stated on projection norms, projectors, and affinities rather than on the
columns themselves. All functions are pure; randomness enters only through an
explicit numpy Generator (or seed).
"""

from __future__ import annotations

import numpy as np

from .errors import (
    AlreadyInSpan,
    DimensionMismatch,
    RankDeficient,
    TooFewSubspaces,
    ZeroVectorRow,
)

RANK_TOL = 1e-10  # residual threshold for rank / span-membership decisions
NORM_TOL = 1e-12  # unit-norm tolerance on point rows
ZERO_TOL = 1e-14  # below this a row cannot be normalized


def _as_matrix(x, name):
    a = np.asarray(x, dtype=float)
    if a.ndim != 2:
        raise DimensionMismatch(f"{name} must be 2-dimensional, got shape {a.shape}")
    return a


def _as_vectors(x):
    """Coerce a list of p-vectors (or an (m, p) array of rows) to a 2-D array."""
    a = np.atleast_2d(np.asarray(x, dtype=float))
    if a.ndim != 2 or a.size == 0:
        raise DimensionMismatch(f"expected a nonempty set of vectors, got shape {a.shape}")
    return a


def normalize(points: np.ndarray) -> np.ndarray:
    """Scale every row of an (N, p) point array to unit Euclidean norm."""
    pts = _as_matrix(points, "points")
    norms = np.linalg.norm(pts, axis=1)
    bad = np.flatnonzero(norms < ZERO_TOL)
    if bad.size:
        raise ZeroVectorRow(bad[0])
    return pts / norms[:, None]


def span_basis(vectors, tol: float = RANK_TOL) -> np.ndarray:
    """Orthonormal basis (p, r) of span{vectors}, silently dropping dependent vectors.

    Modified Gram-Schmidt with a second orthogonalization pass for stability;
    a vector whose residual against the basis built so far falls below `tol`
    contributes nothing to the span and is skipped.
    """
    vecs = _as_vectors(vectors)
    p = vecs.shape[1]
    cols: list[np.ndarray] = []
    for v in vecs:
        u = v.copy()
        for q in cols:
            u -= (q @ u) * q
        for q in cols:
            u -= (q @ u) * q
        r = np.linalg.norm(u)
        if r < tol:
            continue
        cols.append(u / r)
    if not cols:
        return np.zeros((p, 0))
    return np.column_stack(cols)


def orthonormalize(vectors) -> np.ndarray:
    """Orthonormal basis with the same span as the given linearly independent vectors.

    Raises RankDeficient (carrying the effective rank) if any vector's residual
    drops below 1e-10 during elimination.
    """
    vecs = _as_vectors(vectors)
    basis = span_basis(vecs)
    if basis.shape[1] < vecs.shape[0]:
        raise RankDeficient(basis.shape[1])
    return basis


def proj_sqnorm(basis: np.ndarray, y: np.ndarray) -> float:
    """Squared norm of the orthogonal projection of y onto the subspace.

    Equals ||U^T y||^2 for a column-orthonormal U.
    """
    U = _as_matrix(basis, "basis")
    v = np.asarray(y, dtype=float)
    if v.ndim != 1 or v.shape[0] != U.shape[0]:
        raise DimensionMismatch(
            f"point of length {v.shape} does not match basis ambient dim {U.shape[0]}"
        )
    c = U.T @ v
    return float(c @ c)


def proj_sqnorms(basis: np.ndarray, points: np.ndarray) -> np.ndarray:
    """Squared projection norms of every row of an (N, p) array at once."""
    U = _as_matrix(basis, "basis")
    pts = _as_matrix(points, "points")
    if pts.shape[1] != U.shape[0]:
        raise DimensionMismatch(
            f"points of dim {pts.shape[1]} do not match basis ambient dim {U.shape[0]}"
        )
    C = pts @ U
    return np.einsum("ij,ij->i", C, C)


def extend_basis(basis: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Append one orthonormal column so the span grows by y.

    Raises AlreadyInSpan if y's residual against the basis is below 1e-10;
    callers that must keep going (duplicate points) catch and skip.
    """
    U = _as_matrix(basis, "basis")
    v = np.asarray(y, dtype=float)
    if v.ndim != 1 or v.shape[0] != U.shape[0]:
        raise DimensionMismatch("vector length does not match basis ambient dim")
    u = v - U @ (U.T @ v)
    u -= U @ (U.T @ u)
    r = np.linalg.norm(u)
    if r < RANK_TOL:
        raise AlreadyInSpan("vector already lies in the span of the basis")
    return np.column_stack([U, u / r])


def affinity(a: np.ndarray, b: np.ndarray) -> float:
    """Affinity ||A^T B||_F / sqrt(d) between two equal-dimension subspaces.

    1 iff the subspaces are identical, 0 iff they are mutually orthogonal;
    equals the root-mean-square of the cosines of the principal angles.
    """
    A = _as_matrix(a, "a")
    B = _as_matrix(b, "b")
    if A.shape != B.shape:
        raise DimensionMismatch(f"bases of shape {A.shape} and {B.shape} cannot be compared")
    d = A.shape[1]
    if d < 1:
        raise DimensionMismatch("subspace dimension must be at least 1")
    return float(min(1.0, np.linalg.norm(A.T @ B) / np.sqrt(d)))


def max_affinity(bases) -> float:
    """Maximum pairwise affinity over all unordered distinct pairs."""
    if len(bases) < 2:
        raise TooFewSubspaces("need at least two subspaces")
    best = 0.0
    for i in range(len(bases)):
        for j in range(i + 1, len(bases)):
            best = max(best, affinity(bases[i], bases[j]))
    return best


def top_d_principal(points, d: int) -> np.ndarray:
    """Basis of the d-dimensional principal subspace of a set of points.

    First d left singular vectors of the matrix whose columns are the points;
    deterministic only up to sign, so callers should use the induced projector.
    """
    pts = _as_vectors(points)
    if d < 1:
        raise DimensionMismatch("d must be at least 1")
    U, s, _ = np.linalg.svd(pts.T, full_matrices=False)
    if s.shape[0] < d or s[d - 1] < RANK_TOL:
        raise RankDeficient(int(np.count_nonzero(s >= RANK_TOL)))
    return np.ascontiguousarray(U[:, :d])


def random_orthobasis(p: int, k: int, rng=None) -> np.ndarray:
    """Random (p, k) orthonormal basis under the rotation-invariant measure.

    QR of an iid Gaussian matrix with the column signs fixed to the sign of
    R's diagonal, which is what makes the distribution exactly Haar.
    """
    if not 1 <= k <= p:
        raise DimensionMismatch(f"need 1 <= k <= p, got k={k}, p={p}")
    rng = np.random.default_rng(rng)
    while True:
        Q, R = np.linalg.qr(rng.standard_normal((p, k)))
        diag = np.diagonal(R)
        if np.min(np.abs(diag)) < RANK_TOL:  # measure-zero degenerate draw
            continue
        return Q * np.sign(diag)


def random_unit_in_span(basis: np.ndarray, rng=None) -> np.ndarray:
    """Unit vector uniformly distributed on the unit sphere of the subspace."""
    U = _as_matrix(basis, "basis")
    rng = np.random.default_rng(rng)
    k = U.shape[1]
    while True:
        x = rng.standard_normal(k)
        nrm = np.linalg.norm(x)
        if nrm >= ZERO_TOL:
            return U @ (x / nrm)
