"""Clustering error and neighborhood selection error.

Clustering error is the minimum fraction of mislabeled points over all label
permutations, computed exactly by optimal assignment on the confusion matrix.
Neighborhood selection error is the fraction of points with at least one
neighbor from a different class.
"""

from __future__ import annotations

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import LengthMismatch


def _as_labels(x, name: str) -> np.ndarray:
    a = np.asarray(x)
    if a.ndim != 1 or a.size == 0:
        raise LengthMismatch(f"{name} must be a nonempty 1-D labeling, got shape {a.shape}")
    if not np.issubdtype(a.dtype, np.integer):
        ai = a.astype(np.int64)
        if not np.array_equal(ai, a):
            raise LengthMismatch(f"{name} must contain integer labels")
        a = ai
    if a.min() < 0:
        raise LengthMismatch(f"{name} must contain nonnegative labels")
    return a


def clustering_error(pred, truth) -> float:
    """Minimum disagreement fraction over all permutations of predicted labels.

    The confusion matrix is zero-padded to square when the two labelings use
    different numbers of clusters, so predictions with more or fewer clusters
    than the truth are scored without further ceremony.
    """
    a = _as_labels(pred, "pred")
    b = _as_labels(truth, "truth")
    if a.shape != b.shape:
        raise LengthMismatch(f"labelings disagree in length: {a.shape} vs {b.shape}")
    m = int(max(a.max(), b.max())) + 1
    conf = np.zeros((m, m), dtype=np.int64)
    np.add.at(conf, (b, a), 1)
    rows, cols = linear_sum_assignment(conf, maximize=True)
    return 1.0 - conf[rows, cols].sum() / a.size


def neighborhood_selection_error(W, truth) -> float:
    """Fraction of points whose neighborhood contains a point of another class.

    The diagonal self-entry never counts: a point is in its own class.
    """
    Wb = np.asarray(W).astype(bool)
    t = _as_labels(truth, "truth")
    if Wb.ndim != 2 or Wb.shape[0] != Wb.shape[1]:
        raise LengthMismatch(f"W must be square, got shape {Wb.shape}")
    if t.shape[0] != Wb.shape[0]:
        raise LengthMismatch(f"W is {Wb.shape[0]}x{Wb.shape[0]} but truth has {t.shape[0]} labels")
    cross = t[:, None] != t[None, :]
    return float((Wb & cross).any(axis=1).mean())
