"""
Exact rank-2 clustering by angular sweep
========================================

For two-column factors the optimal clusters are contiguous arcs in angle.
The sweep solver is checked against enumeration and then timed on larger n.
"""
import time

import numpy as np

from lowrank_cc import brute_force, rank2_psd_solve, vp_objective

rng = np.random.default_rng(0)
V = rng.standard_normal((10, 2))
C, obj = rank2_psd_solve(V)
Cb, _ = brute_force(V=V)
print("sweep:", C.labels, round(obj, 6))
print("enumeration:", Cb.labels, round(vp_objective(V, Cb), 6))

##############################################################################
# Cubic growth in n.
for n in (100, 200, 400):
    V = rng.standard_normal((n, 2))
    start = time.perf_counter()
    C, obj = rank2_psd_solve(V)
    print(f"n={n:4d}: k={C.k} objective={obj:.2f} in {time.perf_counter() - start:.2f}s")
