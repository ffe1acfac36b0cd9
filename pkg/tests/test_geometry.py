"""Subspace primitive tests; derived values come from independent oracles
(explicit least squares, SVD orthonormalization, Monte-Carlo moments)."""

import math

import numpy as np
import pytest
import scipy.linalg

from greedysc import geometry
from greedysc.errors import (
    AlreadyInSpan,
    DimensionMismatch,
    RankDeficient,
    TooFewSubspaces,
    ZeroVectorRow,
)


def projector(basis):
    return basis @ basis.T


# ---------------------------------------------------------------- normalize

def test_normalize_three_four_five():
    out = geometry.normalize(np.array([[3.0, 4.0]]))
    assert np.allclose(out, [[0.6, 0.8]])


def test_normalize_unit_row_unchanged():
    out = geometry.normalize(np.array([[1.0, 0.0]]))
    assert np.array_equal(out, [[1.0, 0.0]])


def test_normalize_random_rows_unit_by_independent_summation():
    rng = np.random.default_rng(1)
    out = geometry.normalize(rng.standard_normal((5, 3)))
    for row in out:
        # independent oracle: exact summation of squares
        norm = math.sqrt(math.fsum(float(v) * float(v) for v in row))
        assert abs(norm - 1.0) < 1e-12


def test_normalize_zero_row_raises_with_index():
    pts = np.array([[1.0, 0.0], [0.0, 0.0], [0.0, 2.0]])
    with pytest.raises(ZeroVectorRow) as exc:
        geometry.normalize(pts)
    assert exc.value.row == 1


# ----------------------------------------------------------- orthonormalize

def test_orthonormalize_axis_aligned():
    basis = geometry.orthonormalize([(2.0, 0.0, 0.0), (0.0, 3.0, 0.0)])
    assert np.allclose(basis, np.eye(3)[:, :2], atol=1e-12)


def test_orthonormalize_eliminates_first_coordinate():
    basis = geometry.orthonormalize([(1.0, 0.0), (1.0, 1.0)])
    assert np.allclose(basis, np.eye(2), atol=1e-12)


def test_orthonormalize_matches_svd_oracle():
    rng = np.random.default_rng(2)
    vecs = rng.standard_normal((4, 6))
    basis = geometry.orthonormalize(vecs)
    gram = basis.T @ basis
    assert np.max(np.abs(gram - np.eye(4))) < 1e-10
    oracle = scipy.linalg.orth(vecs.T)
    assert np.max(np.abs(projector(basis) - projector(oracle))) < 1e-10


def test_orthonormalize_rank_deficient():
    with pytest.raises(RankDeficient) as exc:
        geometry.orthonormalize([(1.0, 0.0), (2.0, 0.0)])
    assert exc.value.effective_rank == 1


# -------------------------------------------------------------- proj_sqnorm

def test_proj_sqnorm_inside_and_orthogonal():
    U = np.eye(3)[:, :1]
    assert geometry.proj_sqnorm(U, np.array([1.0, 0.0, 0.0])) == pytest.approx(1.0)
    assert geometry.proj_sqnorm(U, np.array([0.0, 1.0, 0.0])) == pytest.approx(0.0, abs=1e-15)


def test_proj_sqnorm_matches_least_squares_oracle():
    rng = np.random.default_rng(3)
    U = geometry.random_orthobasis(8, 3, rng)
    y = geometry.normalize(rng.standard_normal((1, 8)))[0]
    # independent oracle: explicit least-squares projection
    coeffs, *_ = np.linalg.lstsq(U, y, rcond=None)
    residual = y - U @ coeffs
    expected = float(y @ y - residual @ residual)
    assert geometry.proj_sqnorm(U, y) == pytest.approx(expected, abs=1e-12)


def test_proj_sqnorm_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        geometry.proj_sqnorm(np.eye(3)[:, :1], np.array([1.0, 0.0]))


def test_proj_sqnorms_batch_matches_scalar():
    rng = np.random.default_rng(4)
    U = geometry.random_orthobasis(7, 2, rng)
    pts = rng.standard_normal((11, 7))
    batch = geometry.proj_sqnorms(U, pts)
    for i, y in enumerate(pts):
        assert batch[i] == pytest.approx(geometry.proj_sqnorm(U, y), abs=1e-12)


# -------------------------------------------------------------- extend_basis

def test_extend_basis_adds_e2():
    basis = np.eye(3)[:, :1]
    y = np.array([1.0, 1.0, 0.0]) / np.sqrt(2)
    out = geometry.extend_basis(basis, y)
    assert np.allclose(out[:, 1], [0.0, 1.0, 0.0], atol=1e-12)


def test_extend_basis_already_in_span():
    basis = np.eye(3)[:, :1]
    with pytest.raises(AlreadyInSpan):
        geometry.extend_basis(basis, np.array([1.0, 0.0, 0.0]))


def test_extend_basis_projector_matches_orthonormalize():
    rng = np.random.default_rng(5)
    basis = geometry.random_orthobasis(6, 2, rng)
    y = rng.standard_normal(6)
    out = geometry.extend_basis(basis, y)
    oracle = geometry.orthonormalize(np.column_stack([basis, y]).T)
    assert np.max(np.abs(projector(out) - projector(oracle))) < 1e-10


def test_proj_monotone_under_extension():
    rng = np.random.default_rng(6)
    for _ in range(20):
        U = geometry.random_orthobasis(9, 3, rng)
        ext = geometry.extend_basis(U, rng.standard_normal(9))
        y = rng.standard_normal(9)
        assert geometry.proj_sqnorm(ext, y) >= geometry.proj_sqnorm(U, y) - 1e-12


def test_proj_pythagoras_with_complement():
    rng = np.random.default_rng(7)
    Q = geometry.random_orthobasis(8, 8, rng)
    U, Uperp = Q[:, :3], Q[:, 3:]
    for _ in range(10):
        y = rng.standard_normal(8)
        total = geometry.proj_sqnorm(U, y) + geometry.proj_sqnorm(Uperp, y)
        assert total == pytest.approx(float(y @ y), abs=1e-10)


# ------------------------------------------------------------------ affinity

def test_affinity_identical_and_orthogonal():
    I4 = np.eye(4)
    assert geometry.affinity(I4[:, :2], I4[:, :2]) == pytest.approx(1.0)
    assert geometry.affinity(I4[:, :2], I4[:, 2:]) == pytest.approx(0.0, abs=1e-15)


def test_affinity_partial_overlap():
    I4 = np.eye(4)
    a = I4[:, [0, 1]]
    b = I4[:, [0, 2]]
    assert geometry.affinity(a, b) == pytest.approx(1.0 / np.sqrt(2))


def test_affinity_symmetric_and_rotation_invariant():
    rng = np.random.default_rng(8)
    a = geometry.random_orthobasis(9, 3, rng)
    b = geometry.random_orthobasis(9, 3, rng)
    assert geometry.affinity(a, b) == pytest.approx(geometry.affinity(b, a), abs=1e-15)
    rot = geometry.random_orthobasis(3, 3, rng)
    assert abs(geometry.affinity(a @ rot, b) - geometry.affinity(a, b)) < 1e-10


def test_affinity_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        geometry.affinity(np.eye(4)[:, :2], np.eye(4)[:, :3])


def test_max_affinity_orthogonal_triple():
    I3 = np.eye(3)
    bases = [I3[:, [0]], I3[:, [1]], I3[:, [2]]]
    assert geometry.max_affinity(bases) == pytest.approx(0.0, abs=1e-15)


def test_max_affinity_duplicate_basis():
    I3 = np.eye(3)
    bases = [I3[:, [0]], I3[:, [0]], I3[:, [1]]]
    assert geometry.max_affinity(bases) == pytest.approx(1.0)


def test_max_affinity_matches_pairwise_loop():
    rng = np.random.default_rng(9)
    bases = [geometry.random_orthobasis(8, 2, rng) for _ in range(4)]
    from itertools import combinations
    oracle = max(geometry.affinity(a, b) for a, b in combinations(bases, 2))
    assert geometry.max_affinity(bases) == pytest.approx(oracle)


def test_max_affinity_too_few():
    with pytest.raises(TooFewSubspaces):
        geometry.max_affinity([np.eye(3)[:, :1]])


# ---------------------------------------------------------- top_d_principal

def test_top_d_exact_span_matches_orthonormalize():
    rng = np.random.default_rng(10)
    pts = rng.standard_normal((3, 7))
    got = geometry.top_d_principal(pts, 3)
    oracle = geometry.orthonormalize(pts)
    assert np.max(np.abs(projector(got) - projector(oracle))) < 1e-8


def test_top_d_repeated_point():
    pts = np.tile(np.eye(5)[0], (10, 1))
    basis = geometry.top_d_principal(pts, 1)
    assert geometry.proj_sqnorm(basis, np.eye(5)[0]) == pytest.approx(1.0)


def test_top_d_recovers_known_subspace():
    rng = np.random.default_rng(11)
    truth = geometry.random_orthobasis(7, 3, rng)
    pts = np.array([geometry.random_unit_in_span(truth, rng) for _ in range(20)])
    got = geometry.top_d_principal(pts, 3)
    assert geometry.affinity(got, truth) == pytest.approx(1.0, abs=1e-8)


def test_top_d_order_and_duplication_invariance():
    rng = np.random.default_rng(12)
    pts = rng.standard_normal((4, 6))
    base = projector(geometry.top_d_principal(pts, 4))
    shuffled = projector(geometry.top_d_principal(pts[::-1], 4))
    duplicated = projector(geometry.top_d_principal(np.vstack([pts, pts[1]]), 4))
    assert np.max(np.abs(base - shuffled)) < 1e-8
    assert np.max(np.abs(base - duplicated)) < 1e-8


def test_top_d_rank_deficient():
    pts = np.tile(np.eye(4)[0], (3, 1))
    with pytest.raises(RankDeficient) as exc:
        geometry.top_d_principal(pts, 2)
    assert exc.value.effective_rank == 1


# ------------------------------------------------------------ random draws

def test_random_orthobasis_full_dimension_projector():
    Q = geometry.random_orthobasis(5, 5, np.random.default_rng(13))
    assert np.max(np.abs(projector(Q) - np.eye(5))) < 1e-10


def test_random_orthobasis_gram_identity():
    Q = geometry.random_orthobasis(12, 4, np.random.default_rng(14))
    assert np.max(np.abs(Q.T @ Q - np.eye(4))) < 1e-10


def test_random_orthobasis_moment():
    # E ||A X||_F^2 = (k/p) ||A||_F^2 for a Haar (p, k) basis X
    A = np.array([
        [1.0, 2.0, 0.0, -1.0, 3.0, 0.0, 1.0, -2.0],
        [0.0, 1.0, 1.0, 2.0, -1.0, 1.0, 0.0, 1.0],
        [2.0, 0.0, -1.0, 1.0, 0.0, -2.0, 1.0, 0.0],
    ])
    rng = np.random.default_rng(15)
    draws = np.array([
        np.linalg.norm(A @ geometry.random_orthobasis(8, 2, rng)) ** 2
        for _ in range(10_000)
    ])
    expected = (2 / 8) * np.linalg.norm(A) ** 2
    assert abs(draws.mean() - expected) / expected < 0.02


def test_random_unit_in_span_line():
    basis = np.eye(3)[:, :1]
    rng = np.random.default_rng(16)
    for _ in range(5):
        v = geometry.random_unit_in_span(basis, rng)
        assert np.allclose(np.abs(v), [1.0, 0.0, 0.0], atol=1e-12)


def test_random_unit_in_span_invariants():
    rng = np.random.default_rng(17)
    basis = geometry.random_orthobasis(10, 4, rng)
    for _ in range(10):
        v = geometry.random_unit_in_span(basis, rng)
        assert abs(np.linalg.norm(v) - 1.0) < 1e-10
        assert geometry.proj_sqnorm(basis, v) == pytest.approx(1.0, abs=1e-10)


def test_random_unit_in_span_isotropy_moment():
    basis = np.eye(2)
    rng = np.random.default_rng(18)
    first_sq = np.array([
        geometry.random_unit_in_span(basis, rng)[0] ** 2 for _ in range(20_000)
    ])
    assert abs(first_sq.mean() - 0.5) / 0.5 < 0.02
