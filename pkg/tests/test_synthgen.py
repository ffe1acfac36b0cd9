"""Synthetic model tests: instance invariants, determinism, affinity targets."""

import numpy as np
import pytest

from greedysc import geometry, synthgen
from greedysc.errors import AmbientTooSmall, InconsistentBases, InvalidDims


def check_instance_invariants(inst):
    N = inst.n * inst.L
    assert inst.points.shape == (N, inst.p)
    assert np.all(np.abs(np.linalg.norm(inst.points, axis=1) - 1.0) < 1e-12)
    counts = np.bincount(inst.labels, minlength=inst.L)
    assert np.all(counts == inst.n)
    for i, y in enumerate(inst.points):
        own = geometry.proj_sqnorm(inst.bases[inst.labels[i]], y)
        assert own == pytest.approx(1.0, abs=1e-10)
        for l, basis in enumerate(inst.bases):
            if l != inst.labels[i]:
                assert geometry.proj_sqnorm(basis, y) < 1.0 - 1e-8


def test_fully_random_full_dimensional():
    inst = synthgen.gen_fully_random(3, 3, 1, 5, seed=0)
    assert inst.points.shape == (5, 3)
    assert np.all(inst.labels == 0)
    assert np.all(np.abs(np.linalg.norm(inst.points, axis=1) - 1.0) < 1e-12)


def test_fully_random_deterministic():
    a = synthgen.gen_fully_random(10, 2, 3, 4, seed=99)
    b = synthgen.gen_fully_random(10, 2, 3, 4, seed=99)
    assert np.array_equal(a.points, b.points)
    assert np.array_equal(a.labels, b.labels)
    for x, y in zip(a.bases, b.bases):
        assert np.array_equal(x, y)


def test_fully_random_distinct_seeds_differ():
    a = synthgen.gen_fully_random(10, 2, 3, 4, seed=1)
    b = synthgen.gen_fully_random(10, 2, 3, 4, seed=2)
    assert not np.array_equal(a.points, b.points)


def test_fully_random_invariants_and_affinity():
    inst = synthgen.gen_fully_random(20, 3, 4, 10, seed=7)
    check_instance_invariants(inst)
    assert geometry.max_affinity(inst.bases) < 1.0


def test_changing_n_keeps_subspace_draw():
    # per-subspace substreams: more points must not perturb the bases
    small = synthgen.gen_fully_random(12, 3, 2, 5, seed=5)
    large = synthgen.gen_fully_random(12, 3, 2, 9, seed=5)
    for x, y in zip(small.bases, large.bases):
        assert np.array_equal(x, y)
    assert np.array_equal(small.points[:5], large.points[:5])


def test_fully_random_invalid_dims():
    with pytest.raises(InvalidDims):
        synthgen.gen_fully_random(3, 4, 1, 5, seed=0)


def test_equi_affinity_zero_is_orthogonal():
    bases = synthgen.make_equi_affinity_bases(9, 2, 3, 0.0)
    assert geometry.max_affinity(bases) == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize("target,p,d,L", [(0.5, 8, 2, 2), (0.9, 16, 3, 3)])
def test_equi_affinity_hits_target(target, p, d, L):
    bases = synthgen.make_equi_affinity_bases(p, d, L, target)
    for b in bases:
        assert np.max(np.abs(b.T @ b - np.eye(d))) < 1e-12
    for i in range(L):
        for j in range(L):
            if i != j:
                # the cross-Gram must be target * I exactly, not just in norm
                assert np.max(np.abs(bases[i].T @ bases[j] - target * np.eye(d))) < 1e-10
                assert geometry.affinity(bases[i], bases[j]) == pytest.approx(target, abs=1e-10)
    assert geometry.max_affinity(bases) == pytest.approx(target, abs=1e-10)


def test_equi_affinity_ambient_too_small():
    with pytest.raises(AmbientTooSmall):
        synthgen.make_equi_affinity_bases(7, 2, 3, 0.5)


def test_semi_random_axis_lines():
    bases = [np.eye(2)[:, [0]], np.eye(2)[:, [1]]]
    inst = synthgen.gen_semi_random(bases, 3, seed=11)
    assert inst.points.shape == (6, 2)
    for i, y in enumerate(inst.points):
        axis = inst.labels[i]
        assert abs(abs(y[axis]) - 1.0) < 1e-12
        assert abs(y[1 - axis]) < 1e-12


def test_semi_random_deterministic():
    bases = synthgen.make_equi_affinity_bases(12, 2, 2, 0.3)
    a = synthgen.gen_semi_random(bases, 7, seed=21)
    b = synthgen.gen_semi_random(bases, 7, seed=21)
    assert np.array_equal(a.points, b.points)


def test_semi_random_membership():
    bases = synthgen.make_equi_affinity_bases(12, 2, 3, 0.5)
    inst = synthgen.gen_semi_random(bases, 20, seed=3)
    check_instance_invariants(inst)


def test_semi_random_inconsistent_bases():
    with pytest.raises(InconsistentBases):
        synthgen.gen_semi_random([np.eye(3)[:, :1], np.eye(4)[:, :1]], 2, seed=0)
