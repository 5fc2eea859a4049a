"""
Planted partitions with simplex prototypes
==========================================

Each planted cluster sits at a vertex of a regular simplex and items are
perturbed by Gaussian noise. The sampler's score is compared with the score
of the planted clustering, and pair accuracy measures how much of the
planted structure comes back.
"""
import numpy as np

from lowrank_cc import gen_planted, pair_accuracy, vp_objective, zonocc

iters = 20000
print(" d   k_true  k_found  score ratio  pair accuracy")
for d in range(2, 9, 2):
    inst = gen_planted(d, epsilon=0.15, seed=d)
    res = zonocc(inst.factors, iters, seed=0)
    ratio = res.vp_objective / vp_objective(inst.factors, inst.planted)
    acc = pair_accuracy(res.clustering, inst.planted)
    print(f"{d:2d}   {inst.k_true:6d}  {res.clustering.k:7d}  {ratio:11.3f}  {acc:13.3f}")

##############################################################################
# More noise blurs the prototypes.
for eps in (0.0, 0.3, 0.6):
    inst = gen_planted(4, epsilon=eps, seed=1)
    res = zonocc(inst.factors, iters, seed=0)
    print(f"eps={eps:.1f}: pair accuracy {pair_accuracy(res.clustering, inst.planted):.3f}")
