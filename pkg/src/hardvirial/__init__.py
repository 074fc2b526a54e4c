"""Cluster integrals and virial coefficients of hard convex bodies by three
independent routes: direct Monte Carlo, integral-geometric measure
factorization, and Fourier/Radon loop evaluation."""

from .clusters import (
    ClusterGraph,
    CycleBasis,
    VertexTerm,
    automorphism_order,
    boundary_expand,
    cycle_basis,
    enumerate_stars,
    vertex_split,
)
from .geometry import (
    MinkowskiData,
    Pose,
    Shape,
    ball,
    disk,
    intersection_angle,
    minkowski_functionals,
    overlap,
    principal_curvatures,
    spherocylinder,
    support_point,
    surface_sample,
)
from .measures import (
    CurvaturePolynomial,
    WeightFunction,
    curvature_measure,
    f_decomposition_residual,
    kinematic_b2,
    weight_fourier,
)
from .montecarlo import (
    MCEstimate,
    SamplerConfig,
    backend_name,
    cluster_integral_mc,
    merge_estimates,
    virial_coefficient_mc,
)
from .spectral import (
    LoopAssignment,
    SpectralKernel,
    f_fourier,
    loop_evaluate,
    radon_profile,
    ring_integral,
)

__version__ = "0.1.0"

__all__ = [
    "ClusterGraph",
    "CurvaturePolynomial",
    "CycleBasis",
    "LoopAssignment",
    "MCEstimate",
    "MinkowskiData",
    "Pose",
    "SamplerConfig",
    "Shape",
    "SpectralKernel",
    "VertexTerm",
    "WeightFunction",
    "automorphism_order",
    "backend_name",
    "ball",
    "boundary_expand",
    "cluster_integral_mc",
    "curvature_measure",
    "cycle_basis",
    "disk",
    "enumerate_stars",
    "f_decomposition_residual",
    "f_fourier",
    "intersection_angle",
    "kinematic_b2",
    "loop_evaluate",
    "merge_estimates",
    "minkowski_functionals",
    "overlap",
    "principal_curvatures",
    "radon_profile",
    "ring_integral",
    "spherocylinder",
    "support_point",
    "surface_sample",
    "vertex_split",
    "virial_coefficient_mc",
    "weight_fourier",
]
