"""
Clustering objectives on a small PSD instance
=============================================

Builds a similarity matrix from factor rows and scores a few clusterings
under each objective exposed by the library.
"""
import numpy as np

from lowrank_cc import agreement_weight, cc_objective, cut_objective, single_cluster, singletons, vp_objective

##############################################################################
# Six points in the plane, two loose groups pointing in opposite directions.
V = np.array([[1.0, 0.2], [0.9, -0.1], [1.1, 0.0],
              [-1.0, 0.1], [-0.8, -0.2], [-1.2, 0.3]])
A = V @ V.T
print("similarities:\n", np.round(A, 2))

##############################################################################
# Score three candidate clusterings.
candidates = {
    "one cluster": single_cluster(6),
    "singletons": singletons(6),
    "two groups": [0, 0, 0, 1, 1, 1],
}
for name, C in candidates.items():
    print(f"{name:12s} vp={vp_objective(V, C):7.3f}  within={cc_objective(A, C):7.3f}  "
          f"cut={cut_objective(A, C):7.3f}  agreement={agreement_weight(A, C):7.3f}")

##############################################################################
# The within-cluster weight is an affine function of the vector-partition
# objective, so both rank clusterings identically.
C = candidates["two groups"]
print("2*within + sum |v|^2 =", 2 * cc_objective(A, C) + np.sum(V * V), " vp =", vp_objective(V, C))
