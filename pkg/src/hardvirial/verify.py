"""Cross-route identity suites behind the ``verify`` CLI command.

Each check re-states an invariant owned by the geometry, clusters, measures,
or spectral module at that module's tolerance; thresholds here are fixed and
not affected by CLI overrides.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb, pi

import numpy as np

from . import clusters, measures, spectral
from .geometry import Shape, ball, spherocylinder
from .montecarlo import SamplerConfig, cluster_integral_mc, virial_coefficient_mc

TOLERANCES = {
    "decomposition": 1e-10,
    "gauss_bonnet": 1e-10,
    "parseval": 1e-8,
    "scaling": 1e-8,
    "cross_route_b2": 1e-10,
    "mc_sigma": 3.0,
}

SUITES = ("decomposition", "gauss-bonnet", "parseval", "boundary", "cross-route")


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str


def _check(suite, name, passed, detail):
    return CheckResult(suite, name, bool(passed), detail)


def _suite_decomposition():
    k = np.logspace(-3, 2, 512)
    tol = TOLERANCES["decomposition"]
    out = []
    for r1, r2 in ((0.5, 0.5), (0.3, 0.7), (1.0, 2.0)):
        residual = float(np.max(measures.f_decomposition_residual(r1, r2, k)))
        scale = abs(spectral.f_fourier(spectral.SpectralKernel(r1 + r2, 3), 0.0))
        out.append(
            _check(
                "decomposition",
                f"deconvolution R1={r1} R2={r2}",
                residual <= tol * scale,
                f"max residual {residual:.3e} vs {tol * scale:.3e}",
            )
        )
    return out


def _suite_gauss_bonnet():
    shapes = [ball(1.0)]
    shapes += [spherocylinder(r, ell) for r in (0.25, 0.5, 1.0) for ell in (0.0, 1.0, 3.0)]
    tol = TOLERANCES["gauss_bonnet"]
    out = []
    for shape in shapes:
        closed = measures.curvature_measure(shape, "gauss")
        out.append(
            _check(
                "gauss-bonnet",
                f"closed form {shape.kind} r={shape.radius} l={shape.length}",
                abs(closed - 4.0 * pi) <= tol * 4.0 * pi,
                f"integral {closed!r}",
            )
        )
    for shape in (ball(1.0), spherocylinder(0.5, 1.0)):
        est, err = measures.curvature_measure_mc(shape, "gauss", samples=100_000, seed=11)
        bound = TOLERANCES["mc_sigma"] * err + 1e-10 * 4.0 * pi
        out.append(
            _check(
                "gauss-bonnet",
                f"surface quadrature {shape.kind} l={shape.length}",
                abs(est - 4.0 * pi) <= bound,
                f"estimate {est:.8f} +- {err:.2e}",
            )
        )
    return out


def _suite_parseval():
    out = []
    tol = TOLERANCES["parseval"]
    for sigma in (0.5, 1.0, 2.0):
        value = spectral.ring_integral(2, spectral.SpectralKernel(sigma, 3))
        target = 4.0 * pi / 3.0 * sigma**3
        out.append(
            _check(
                "parseval",
                f"ring(2) sigma={sigma}",
                abs(value - target) <= tol * target,
                f"value {value:.12f} vs {target:.12f}",
            )
        )
    r3 = spectral.ring_integral(3, spectral.SpectralKernel(1.0, 3))
    r3s = spectral.ring_integral(3, spectral.SpectralKernel(2.0, 3))
    out.append(
        _check(
            "parseval",
            "ring scaling sigma=2",
            abs(r3s - 2.0**6 * r3) <= TOLERANCES["scaling"] * abs(r3s),
            f"{r3s:.10f} vs 64*{r3:.10f}",
        )
    )
    for g in (clusters.ClusterGraph(3, ((1, 2), (2, 3), (1, 3))), clusters.FIG1_GRAPH):
        sums = spectral.loop_assignment(g).vertex_sums()
        flat = [c for vec in sums.values() for c in vec]
        out.append(
            _check(
                "parseval",
                f"loop conservation {clusters.format_graph(g)}",
                all(c == 0 for c in flat),
                f"vertex sums {sorted(set(flat))}",
            )
        )
    return out


def _suite_boundary():
    out = []
    for n in (2, 3, 4, 5):
        for k in range(1, 7):
            expected = sum(comb(k, j) for j in range(1, min(k, n) + 1))
            got = len(clusters.boundary_expand(k, n))
            out.append(
                _check(
                    "boundary",
                    f"term count k={k} n={n}",
                    got == expected,
                    f"{got} terms, expected {expected}",
                )
            )
    terms = clusters.boundary_expand(2, 3)
    expected_terms = {
        (frozenset({1}), frozenset({2})),
        (frozenset({2}), frozenset({1})),
        (frozenset({1, 2}), frozenset()),
    }
    got_terms = {(t.surface_set, t.domain_set) for t in terms}
    out.append(
        _check(
            "boundary",
            "two-domain expansion structure",
            got_terms == expected_terms,
            "Sigma1*D2 + D1*Sigma2 + Sigma1*Sigma2",
        )
    )
    out.append(
        _check(
            "boundary",
            "four domains in n=3 drop the 4-surface term",
            len(clusters.boundary_expand(4, 3)) == 14,
            f"{len(clusters.boundary_expand(4, 3))} terms",
        )
    )
    return out


def _suite_cross_route():
    out = []
    tol = TOLERANCES["cross_route_b2"]
    for r in (0.3, 0.5, 1.0):
        shape = ball(r)
        kin = measures.kinematic_b2(shape, shape)
        four = -spectral.f_fourier(spectral.kernel_for(shape), 0.0) / 2.0
        out.append(
            _check(
                "cross-route",
                f"B2 kinematic vs fourier r={r}",
                abs(kin - four) <= tol * kin,
                f"{kin!r} vs {four!r}",
            )
        )
        mc = virial_coefficient_mc(2, shape, SamplerConfig(seed=5, samples=20_000))
        bound = TOLERANCES["mc_sigma"] * mc.stderr + 1e-12 * kin
        out.append(
            _check(
                "cross-route",
                f"B2 kinematic vs MC r={r}",
                abs(kin - mc.mean) <= bound,
                f"{kin!r} vs {mc.mean!r} +- {mc.stderr:.2e}",
            )
        )
    triangle = clusters.ClusterGraph(3, ((1, 2), (2, 3), (1, 3)))
    shape = ball(0.5)
    mc = cluster_integral_mc(triangle, shape, SamplerConfig(seed=7, samples=200_000))
    ring = spectral.ring_integral(3, spectral.kernel_for(shape))
    out.append(
        _check(
            "cross-route",
            "triangle MC vs ring(3)",
            abs(mc.mean - ring) <= TOLERANCES["mc_sigma"] * mc.stderr,
            f"MC {mc.mean:.5f} +- {mc.stderr:.5f} vs {ring:.5f}",
        )
    )
    return out


_SUITE_FUNCS = {
    "decomposition": _suite_decomposition,
    "gauss-bonnet": _suite_gauss_bonnet,
    "parseval": _suite_parseval,
    "boundary": _suite_boundary,
    "cross-route": _suite_cross_route,
}


def run_suite(suite: str | None = None) -> list[CheckResult]:
    """Run one named identity suite, or all of them."""
    if suite is None:
        names = SUITES
    elif suite in _SUITE_FUNCS:
        names = (suite,)
    else:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    results = []
    for name in names:
        results.extend(_SUITE_FUNCS[name]())
    return results
