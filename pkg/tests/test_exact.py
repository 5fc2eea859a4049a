import math

import numpy as np
import pytest

from lowrank_cc.core import (
    agreement_weight,
    canonicalize,
    cc_objective,
    cut_objective,
    merge_improving,
    sum_points,
    vp_objective,
)
from lowrank_cc.exact import brute_force, rank1_psd_solve, rank2_psd_solve, set_partitions
from oracles import all_partitions, best_partition, cc_direct, vp_direct


def bell(n):
    # Bell triangle
    row = [1]
    for _ in range(n - 1):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[-1]


@pytest.mark.parametrize("n", range(1, 10))
def test_set_partitions_count_and_order(n):
    L = np.vstack(list(set_partitions(n)))
    assert L.shape[0] == bell(n) == sum(1 for _ in all_partitions(range(n)))
    as_tuples = [tuple(r) for r in L.tolist()]
    assert as_tuples == sorted(as_tuples)
    assert len(set(as_tuples)) == len(as_tuples)
    for r in L:
        assert canonicalize(r).labels.tolist() == r.tolist()


def test_set_partitions_capped():
    L = np.vstack(list(set_partitions(7, max_clusters=2)))
    assert L.shape[0] == 2 ** 6
    assert L.max() == 1


def test_brute_force_rank_one_sign_split():
    v = np.array([1.0, 2.0, -3.0])
    A = np.outer(v, v)
    C, obj = brute_force(A)
    assert C.labels.tolist() == [0, 0, 1]
    assert cut_objective(A, C) == 9.0
    assert obj == cc_objective(A, C) == 2.0


def test_brute_force_all_negative_gives_singletons():
    A = -np.ones((3, 3))
    C, _ = brute_force(A)
    assert C.k == 3


def test_brute_force_too_large():
    with pytest.raises(ValueError, match="instance too large for oracle"):
        brute_force(np.eye(14))
    with pytest.raises(ValueError):
        brute_force()


def test_rone_gadget():
    # Partition instance {2, 4, 6}: s = 2, B = 12, M = B/2 - s/2 = 5
    s, B = 2, 12
    M = B // 2 - s // 2
    v = np.array([2.0, 4.0, 6.0, -M, -M])
    C, _ = brute_force(-np.outer(v, v))
    rone = vp_objective(v, C)
    assert rone == 2 * (s / 2) ** 2 == 2.0
    oracle, _ = best_partition(lambda L: vp_direct(v[:, None], L), 5, maximize=False)
    assert oracle == rone
    assert C.k == 2
    for c in range(2):
        members = C.members(c)
        assert sorted(v[members]).count(-M) == 1
        assert v[members][v[members] > 0].sum() == 6


@pytest.mark.parametrize("seed", range(4))
def test_brute_force_matches_oracle(seed):
    rng = np.random.default_rng(seed)
    n = 7
    A = rng.standard_normal((n, n))
    A = A + A.T
    best, _ = best_partition(lambda L: cc_direct(A, L), n)
    _, obj = brute_force(A)
    assert obj == pytest.approx(best, rel=1e-12)
    V = rng.standard_normal((n, 2))
    best, _ = best_partition(lambda L: vp_direct(V, L), n)
    C, obj = brute_force(V=V)
    assert obj == pytest.approx(best, rel=1e-12)
    assert obj == pytest.approx(vp_objective(V, C), rel=1e-12)


def test_brute_force_factor_and_weight_agree():
    V = np.random.default_rng(9).standard_normal((8, 3))
    Cw, ow = brute_force(V @ V.T)
    Cv, ov = brute_force(V=V)
    assert 2 * ow + np.sum(V ** 2) == pytest.approx(ov, rel=1e-9)
    assert vp_objective(V, Cw) == pytest.approx(ov, rel=1e-9)


@pytest.mark.parametrize("seed", range(10))
def test_brute_force_certificate(seed):
    rng = np.random.default_rng(seed)
    n, d = 9, int(rng.integers(1, 4))
    V = rng.standard_normal((n, d))
    C, _ = brute_force(V=V)
    S = sum_points(V, C)
    own = np.einsum("ij,ij->i", V, S[C.labels])
    assert np.all(own[:, None] >= V @ S.T - 1e-9)


def test_rank1_examples():
    assert rank1_psd_solve([1, 2, -3]).labels.tolist() == [0, 0, 1]
    assert rank1_psd_solve([-1, -1]).k == 1
    assert rank1_psd_solve([0.0, -1.0, 2.0]).labels.tolist() == [0, 1, 0]


@pytest.mark.parametrize("seed", range(5))
def test_rank1_matches_brute_force(seed):
    v = np.random.default_rng(seed).standard_normal(8)
    A = np.outer(v, v)
    C = rank1_psd_solve(v)
    _, best = brute_force(A)
    assert cc_objective(A, C) == pytest.approx(best, rel=1e-12)
    iu = np.triu_indices(8, 1)
    assert agreement_weight(A, C) == np.abs(A[iu]).sum()


def test_rank2_three_directions():
    ang = np.deg2rad([0, 120, 240])
    V = np.column_stack([np.cos(ang), np.sin(ang)])
    C, obj = rank2_psd_solve(V)
    assert C.k == 3
    assert obj == pytest.approx(3.0)


def test_rank2_half_plane_single_cluster():
    ang = np.deg2rad([10, 30, 50, 70])
    V = np.column_stack([np.cos(ang), np.sin(ang)])
    C, _ = rank2_psd_solve(V)
    assert C.k == 1


def test_rank2_rejects_wrong_rank():
    with pytest.raises(ValueError):
        rank2_psd_solve(np.ones((3, 3)))


def test_rank2_zero_rows():
    V = np.array([[0.0, 0.0], [1.0, 0.0], [-1.0, 0.1], [0.0, 0.0]])
    C, obj = rank2_psd_solve(V)
    _, best = brute_force(V=V)
    assert obj == pytest.approx(best)
    assert C.labels[0] == C.labels[1]
    C0, obj0 = rank2_psd_solve(np.zeros((3, 2)))
    assert C0.k == 1 and obj0 == 0.0


@pytest.mark.parametrize("seed", range(20))
def test_rank2_matches_brute_force(seed):
    rng = np.random.default_rng(1000 + seed)
    n = int(rng.integers(2, 11))
    V = rng.standard_normal((n, 2))
    C, obj = rank2_psd_solve(V)
    _, best = brute_force(V=V)
    assert obj == pytest.approx(best, rel=1e-9)
    assert C.k <= 3


def test_rank2_duplicate_directions():
    V = np.array([[1.0, 0], [2.0, 0], [-1.0, 0.5], [-2.0, 1.0], [0.0, -1.0], [0.0, -3.0]])
    _, obj = rank2_psd_solve(V)
    _, best = brute_force(V=V)
    assert obj == pytest.approx(best, rel=1e-12)


@pytest.mark.parametrize("seed", range(5))
def test_rank2_rotation_invariance(seed):
    rng = np.random.default_rng(seed)
    V = rng.standard_normal((15, 2))
    t = rng.uniform(0, 2 * math.pi)
    R = np.array([[math.cos(t), -math.sin(t)], [math.sin(t), math.cos(t)]])
    C1, o1 = rank2_psd_solve(V)
    C2, o2 = rank2_psd_solve(V @ R.T)
    assert o1 == pytest.approx(o2, rel=1e-9)
    assert C1 == C2


def test_rank2_threads_identical():
    V = np.random.default_rng(4).standard_normal((40, 2))
    assert rank2_psd_solve(V) == rank2_psd_solve(V, threads=4)


@pytest.mark.parametrize("seed", range(10))
def test_cluster_count_bound(seed):
    rng = np.random.default_rng(seed)
    d = 1 + seed % 3
    V = rng.standard_normal((8, d))
    C, _ = brute_force(V=V, max_clusters=8)
    M = merge_improving(V, C, collapse_orthogonal=True)
    assert M.k <= d + 1
