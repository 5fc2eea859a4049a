"""Correlation clustering for low-rank positive semidefinite similarity matrices."""
from .baselines import kmeans, pivot
from .core import (
    Clustering,
    agreement_weight,
    canonicalize,
    cc_objective,
    cut_objective,
    merge_improving,
    single_cluster,
    singletons,
    sum_points,
    vp_objective,
)
from .dataprep import (
    PlantedInstance,
    TimeSeriesTable,
    discarded_spectrum_error,
    gen_gaussian,
    gen_planted,
    lowrank_psd_factor,
    pearson_correlation,
    prepare,
    shift_diagonal_psd,
    simplex_vertices,
)
from .evaluate import attribute_cohesion, compare_report, pair_accuracy
from .exact import brute_force, rank1_psd_solve, rank2_psd_solve
from .zonotope import build_generators, decode_clustering, sample_signing, zonocc

__version__ = "0.1.0"
