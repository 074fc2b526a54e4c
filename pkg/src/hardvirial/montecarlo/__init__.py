"""Monte Carlo route: cluster integrals and virial coefficients for hard
convex bodies, with reproducible parallel sampling."""

from .engine import (
    MCEstimate,
    SamplerConfig,
    backend_name,
    box_cluster_integral_mc,
    cluster_integral_mc,
    merge_estimates,
    sample_tree_configurations,
    virial_coefficient_mc,
)

__all__ = [
    "MCEstimate",
    "SamplerConfig",
    "backend_name",
    "box_cluster_integral_mc",
    "cluster_integral_mc",
    "merge_estimates",
    "sample_tree_configurations",
    "virial_coefficient_mc",
]
