"""Synthetic union-of-subspaces datasets.

Two noiseless models: fully random (subspaces Haar, points uniform on each
subspace's unit sphere) and semi-random (subspaces given, points uniform).
A constructor for arrangements whose pairwise affinities all equal a target
value makes controlled semi-random sweeps possible.

One 64-bit seed expands into per-subspace and per-point substreams through
`SeedSequence` spawn keys, so changing n never perturbs the subspace draw.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import geometry
from .errors import AmbientTooSmall, InconsistentBases, InvalidDims

FULLY_RANDOM = "fully_random"
SEMI_RANDOM = "semi_random"

_BASIS_STREAM = 0
_POINT_STREAM = 1


@dataclass
class SyntheticInstance:
    """A labeled unit-norm point set drawn from a union of subspaces."""

    points: np.ndarray  # (n*L, p), unit rows
    labels: np.ndarray  # (n*L,) ints in [0, L)
    bases: list[np.ndarray]  # L arrays of shape (p, d)
    p: int
    d: int
    L: int
    n: int
    model: str
    seed: int


def _substream(seed: int, stream: int, index: int) -> np.random.Generator:
    """Independent generator for (seed, stream, index); a counter-based split."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(stream, index)))


def _unit_points_on(basis: np.ndarray, n: int, rng: np.random.Generator) -> np.ndarray:
    d = basis.shape[1]
    X = rng.standard_normal((n, d))
    norms = np.linalg.norm(X, axis=1)
    while np.any(norms < geometry.ZERO_TOL):  # measure-zero; redraw those rows
        bad = norms < geometry.ZERO_TOL
        X[bad] = rng.standard_normal((int(bad.sum()), d))
        norms = np.linalg.norm(X, axis=1)
    return (X / norms[:, None]) @ basis.T


def gen_fully_random(p: int, d: int, L: int, n: int, seed: int) -> SyntheticInstance:
    """L independent Haar subspaces with n iid uniform unit points on each."""
    if not (1 <= d <= p) or n < 1 or L < 1:
        raise InvalidDims(f"invalid dimensions p={p}, d={d}, L={L}, n={n}")
    bases = [
        geometry.random_orthobasis(p, d, _substream(seed, _BASIS_STREAM, l)) for l in range(L)
    ]
    return gen_semi_random(bases, n, seed, _model=FULLY_RANDOM)


def gen_semi_random(bases, n: int, seed: int, _model: str = SEMI_RANDOM) -> SyntheticInstance:
    """n iid uniform unit points on each of the given subspaces."""
    if not bases:
        raise InconsistentBases("at least one basis is required")
    shapes = {np.asarray(b).shape for b in bases}
    if len(shapes) != 1 or len(next(iter(shapes))) != 2:
        raise InconsistentBases(f"bases must share one (p, d) shape, got {sorted(shapes)}")
    if n < 1:
        raise InvalidDims(f"need n >= 1, got n={n}")
    (p, d) = shapes.pop()
    L = len(bases)
    blocks = [
        _unit_points_on(np.asarray(bases[l], dtype=float), n, _substream(seed, _POINT_STREAM, l))
        for l in range(L)
    ]
    points = np.vstack(blocks)
    labels = np.repeat(np.arange(L), n)
    return SyntheticInstance(points, labels, [np.asarray(b, dtype=float) for b in bases],
                             p, d, L, n, _model, seed)


def make_equi_affinity_bases(p: int, d: int, L: int, target_maxaff: float) -> list[np.ndarray]:
    """L subspaces of dimension d whose pairwise affinities all equal target_maxaff.

    Built column-wise as cos(t)*B0 + sin(t)*Bl from mutually orthogonal blocks
    B0, B1, ..., BL with cos^2(t) = target_maxaff; needs p >= (L+1)*d rows.
    """
    if not 0.0 <= target_maxaff < 1.0:
        raise InvalidDims(f"target affinity must lie in [0, 1), got {target_maxaff}")
    if d < 1 or L < 1:
        raise InvalidDims(f"need d >= 1 and L >= 1, got d={d}, L={L}")
    if p < (L + 1) * d:
        raise AmbientTooSmall(f"need p >= (L+1)*d = {(L + 1) * d}, got p={p}")
    c = np.sqrt(target_maxaff)
    s = np.sqrt(1.0 - target_maxaff)
    eye = np.eye(d)
    bases = []
    for l in range(1, L + 1):
        B = np.zeros((p, d))
        B[:d, :] = c * eye
        B[l * d:(l + 1) * d, :] += s * eye
        bases.append(B)
    return bases
