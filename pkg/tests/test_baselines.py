import numpy as np
import pytest

from lowrank_cc.baselines import kmeans, kmeans_cost, kmeans_pp_seed, lloyd, pivot, pivot_once
from lowrank_cc.core import canonicalize, cc_objective
from lowrank_cc.dataprep import gen_planted
from lowrank_cc.exact import brute_force
from lowrank_cc.evaluate import pair_accuracy


def planted_signs(d, n, seed):
    inst = gen_planted(d, n, 0.0, seed)
    return inst.factors @ inst.factors.T, inst.planted


@pytest.mark.parametrize("seed", range(5))
def test_pivot_recovers_perfect_instance(seed):
    A, planted = planted_signs(3, 30, seed)
    C, _ = pivot(A, 1, seed=seed)
    assert C == planted


def test_pivot_single_item():
    C, obj = pivot([[1.0]], 3, seed=0)
    assert C.k == 1 and obj == 0.0


def test_pivot_rejects_zero_restarts():
    with pytest.raises(ValueError):
        pivot(np.eye(2), 0)


def test_pivot_validity():
    rng = np.random.default_rng(0)
    n = 25
    A = rng.standard_normal((n, n))
    A = A + A.T
    pos = A > 0
    for _ in range(20):
        labels, pivots = pivot_once(pos, rng.permutation(n))
        assert np.all(labels >= 0)
        for i in range(n):
            p = pivots[i]
            assert labels[p] == labels[i]
            assert i == p or pos[p, i]


def test_pivot_zero_weight_is_dissimilar():
    A = np.zeros((3, 3))
    C, _ = pivot(A, 5, seed=1)
    assert C.k == 3


def test_pivot_restarts_monotone():
    rng = np.random.default_rng(3)
    A = np.sign(rng.standard_normal((30, 30)))
    A = np.triu(A, 1)
    A = A + A.T
    prev = -np.inf
    for r in [1, 2, 5, 20, 50]:
        _, obj = pivot(A, r, seed=11)
        assert obj >= prev
        prev = obj


def test_pivot_vs_oracle():
    rng = np.random.default_rng(4)
    n = 8
    A = np.sign(rng.standard_normal((n, n)))
    A = np.triu(A, 1)
    A = A + A.T
    C, obj = pivot(A, 1000, seed=0)
    _, best = brute_force(A)
    assert obj == cc_objective(A, C)
    assert obj <= best
    print(f"pivot gap to optimum: {best - obj}")


def test_kmeans_k_equals_n():
    X = np.random.default_rng(0).standard_normal((6, 2))
    C = kmeans(X, 6, restarts=3, seed=0)
    assert C.k == 6
    assert kmeans_cost(X, C.labels) == 0.0


def test_kmeans_k_one():
    X = np.random.default_rng(1).standard_normal((10, 3))
    C = kmeans(X, 1, seed=0)
    assert C.k == 1
    labels, centers, _ = lloyd(X, X[:1].copy())
    np.testing.assert_allclose(centers[0], X.mean(axis=0))


def test_kmeans_rejects_large_k():
    with pytest.raises(ValueError):
        kmeans(np.ones((3, 2)), 4)


def test_kmeans_two_blobs():
    for seed in range(20):
        rng = np.random.default_rng(seed)
        a = rng.standard_normal((15, 2))
        b = rng.standard_normal((15, 2)) + np.array([10.0, 0.0])
        X = np.vstack([a, b])
        truth = canonicalize([0] * 15 + [1] * 15)
        assert pair_accuracy(kmeans(X, 2, restarts=5, seed=seed), truth) == 1.0


def test_lloyd_cost_non_increasing():
    rng = np.random.default_rng(5)
    X = rng.standard_normal((200, 3))
    for k in (2, 5, 9):
        _, _, costs = lloyd(X, kmeans_pp_seed(X, k, rng))
        assert all(b <= a + 1e-9 for a, b in zip(costs, costs[1:]))


def test_lloyd_reseeds_empty_cluster():
    X = np.array([[0.0], [0.1], [0.2], [10.0]])
    centers = np.array([[0.1], [100.0], [10.0]])
    labels, _, _ = lloyd(X, centers)
    assert len(np.unique(labels)) == 3


def test_kmeans_count():
    X = np.random.default_rng(6).standard_normal((50, 2))
    for k in (1, 3, 7):
        assert kmeans(X, k, restarts=2, seed=1).k == k
