"""
Comparing the sampler with Pivot and k-means
============================================

Runs each method on one rank-5 instance and prints the comparison table.
"""
import time

import numpy as np

from lowrank_cc import compare_report, gen_planted, kmeans, pivot, zonocc

inst = gen_planted(5, 60, 0.2, seed=11)
V = inst.factors
A = V @ V.T

results, seconds = {}, {}
for name, run in {
    "zonocc": lambda: zonocc(V, 20000, seed=0).clustering,
    "pivot": lambda: pivot(A, 200, seed=0)[0],
    "kmeans": lambda: kmeans(V, inst.k_true, restarts=10, seed=0),
    "planted": lambda: inst.planted,
}.items():
    start = time.perf_counter()
    results[name] = run()
    seconds[name] = time.perf_counter() - start

print(compare_report(A, V, results, seconds).to_text())
