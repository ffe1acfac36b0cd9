"""Greedy subspace clustering.

Points lying on a union of low-dimensional linear subspaces are clustered by
growing a neighborhood for each point (nearest-subspace neighbor selection),
then either greedily recovering the subspaces from the neighborhoods or
spectrally clustering the symmetrized neighbor graph. Includes the synthetic
union-of-subspaces models, the clustering/neighborhood error metrics, and a
seeded Monte-Carlo experiment harness.
"""

from . import errors
from .geometry import (
    affinity,
    extend_basis,
    max_affinity,
    normalize,
    orthonormalize,
    proj_sqnorm,
    proj_sqnorms,
    random_orthobasis,
    random_unit_in_span,
    span_basis,
    top_d_principal,
)
from .recovery import RecoveryResult, candidate_subspaces, gsr, gsr_label, gsr_select
from .harness import CellResult, ExperimentConfig, GridCell, run_cell, run_grid
from .metrics import clustering_error, neighborhood_selection_error
from .neighbors import NsnParams, fnsn, nsn, nsn_oracle
from .spectral import (
    build_affinity,
    estimate_clusters,
    kmeans,
    spectral_cluster,
    spectral_embed,
)
from .synthgen import (
    SyntheticInstance,
    gen_fully_random,
    gen_semi_random,
    make_equi_affinity_bases,
)

__version__ = "0.1.0"

__all__ = [
    "errors",
    "affinity", "extend_basis", "max_affinity", "normalize", "orthonormalize",
    "proj_sqnorm", "proj_sqnorms", "random_orthobasis", "random_unit_in_span",
    "span_basis", "top_d_principal",
    "RecoveryResult", "candidate_subspaces", "gsr", "gsr_label", "gsr_select",
    "CellResult", "ExperimentConfig", "GridCell", "run_cell", "run_grid",
    "clustering_error", "neighborhood_selection_error",
    "NsnParams", "fnsn", "nsn", "nsn_oracle",
    "build_affinity", "estimate_clusters", "kmeans", "spectral_cluster", "spectral_embed",
    "SyntheticInstance", "gen_fully_random", "gen_semi_random", "make_equi_affinity_bases",
]
