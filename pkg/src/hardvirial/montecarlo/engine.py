"""Parallel Monte Carlo engine for hard-particle cluster integrals.

Estimator: for a connected Mayer diagram the non-root particles are placed
along a spanning tree, each uniformly inside the exclusion ball of its
parent (radius = pair contact distance D). Every tree edge then contributes
an exact factor -V_D, and each remaining bond is a 0/1 overlap indicator
carrying a factor -1, so a sample contributes

    (-1)^edges * V_D^(order-1) * [all bonds overlap]

and the engine only counts integer hits. For isotropic bodies the tree
bonds overlap by construction and are skipped; spherocylinders draw one
Haar-uniform quaternion per particle and test every bond.

Reproducibility: sample blocks are partitioned over workers, each worker
owning a counter-based Philox stream keyed by (seed, stream tag, worker).
Results are bit-identical for fixed (seed, samples, workers, batch) and
independent of thread scheduling.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from ..clusters import ClusterGraph, UnsupportedOrderError, enumerate_stars, virial_prefactor
from ..geometry import Shape, ball_volume, contact_diameter
from . import _backend

_MASK64 = (1 << 64) - 1
_DEFAULT_BATCH = 65536


@dataclass(frozen=True)
class MCEstimate:
    """Monte Carlo result with provenance.

    ``stderr`` is the standard error of ``mean`` (sample standard deviation
    over variance blocks divided by sqrt(blocks)). ``workers`` counts the
    independent streams that contributed.
    """

    mean: float
    stderr: float
    samples: int
    seed: int
    workers: int


@dataclass(frozen=True)
class SamplerConfig:
    """Sampling budget and stream identity.

    ``batch`` is the number of samples per variance block (0 selects
    min(samples, 65536)). The sample count is rounded up to a whole number
    of blocks; estimates report the actual count.
    """

    seed: int = 0
    samples: int = 1_000_000
    workers: int = 1
    batch: int = 0

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be positive")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.batch < 0 or self.batch > self.samples:
            raise ValueError("need samples >= batch >= 1 (or batch=0 for auto)")

    def resolved_batch(self) -> int:
        return self.batch if self.batch > 0 else min(self.samples, _DEFAULT_BATCH)


def _generator(seed: int, stream: tuple[int, ...]) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=seed & _MASK64, spawn_key=stream)
    return np.random.Generator(np.random.Philox(ss))


def _placement(g: ClusterGraph):
    """BFS placement: slot order of nodes, parent slot per placed node, and
    the set of tree edges (1-based node pairs)."""
    adj = {u: sorted(vs) for u, vs in g.adjacency().items()}
    order = [1]
    slot = {1: 0}
    parent_slot: list[int] = []
    tree_edges: set[tuple[int, int]] = set()
    qi = 0
    while qi < len(order):
        u = order[qi]
        qi += 1
        for w in adj[u]:
            if w not in slot:
                slot[w] = len(order)
                parent_slot.append(slot[u])
                tree_edges.add((u, w) if u < w else (w, u))
                order.append(w)
    if len(order) != g.order:
        raise ValueError("cluster graph must be connected")
    return slot, parent_slot, tree_edges


def _estimate_from_blocks(hits: np.ndarray, batch: int, prefactor: float, seed: int) -> MCEstimate:
    nblocks = hits.shape[0]
    n = nblocks * batch
    total = int(hits.sum())
    mean = prefactor * (total / n)
    if nblocks > 1:
        block_means = prefactor * (hits / batch)
        stderr = float(np.std(block_means, ddof=1) / math.sqrt(nblocks))
    else:
        p = total / n
        var = p * (1.0 - p) * (n / (n - 1)) if n > 1 else 0.0
        stderr = abs(prefactor) * math.sqrt(var / n)
    return MCEstimate(mean, stderr, n, seed, 1)


def merge_estimates(parts: list[MCEstimate]) -> MCEstimate:
    """Combine estimates of the same integrand: sample-count-weighted mean,
    standard errors added in quadrature with the same weights."""
    if not parts:
        raise ValueError("cannot merge an empty list of estimates")
    n = sum(p.samples for p in parts)
    mean = sum(p.samples * p.mean for p in parts) / n
    stderr = math.sqrt(sum((p.samples / n * p.stderr) ** 2 for p in parts))
    return MCEstimate(mean, stderr, n, parts[0].seed, sum(p.workers for p in parts))


def _run_workers(block_fn, cfg: SamplerConfig, stream: tuple[int, ...], prefactor: float):
    """Run `block_fn(rng, batch) -> hits` over the block budget, partitioned
    across worker streams; returns the merged estimate."""
    batch = cfg.resolved_batch()
    nblocks = -(-cfg.samples // batch)
    shares = [
        nblocks // cfg.workers + (1 if w < nblocks % cfg.workers else 0)
        for w in range(cfg.workers)
    ]
    tasks = [(w, share) for w, share in enumerate(shares) if share > 0]

    def run_one(args):
        w, share = args
        rng = _generator(cfg.seed, stream + (w,))
        hits = np.empty(share, dtype=np.int64)
        for b in range(share):
            hits[b] = block_fn(rng, batch)
        return _estimate_from_blocks(hits, batch, prefactor, cfg.seed)

    if len(tasks) == 1:
        partials = [run_one(tasks[0])]
    else:
        with ThreadPoolExecutor(max_workers=len(tasks)) as pool:
            partials = list(pool.map(run_one, tasks))
    return merge_estimates(partials)


def cluster_integral_mc(
    g: ClusterGraph,
    shape: Shape,
    cfg: SamplerConfig,
    _stream: tuple[int, ...] = (),
) -> MCEstimate:
    """Estimate the cluster integral of diagram ``g`` for identical hard
    bodies: particle 1 pinned at the origin, positions and orientations of
    the rest integrated over, one f-bond per edge."""
    slot, parent_slot, tree_edges = _placement(g)
    m1 = g.order - 1
    dim = shape.dim
    diam = contact_diameter(shape, shape)
    contact = 2.0 * shape.radius
    volume = ball_volume(dim, diam)
    prefactor = (-1.0) ** g.size * volume**m1

    anisotropic = shape.is_anisotropic
    if anisotropic:
        check = [e for e in g.edges]
    else:
        # tree bonds always overlap: exclusion ball radius equals contact
        check = [e for e in g.edges if e not in tree_edges]
    edges = np.array([[slot[u], slot[v]] for u, v in check], dtype=np.intp).reshape(-1, 2)
    parents = np.array(parent_slot, dtype=np.intp)
    kern = _backend.kernels
    halflen = 0.5 * shape.length
    radius = shape.radius

    def block_fn(rng, nb):
        u = rng.random((nb, m1))
        gauss = rng.standard_normal((nb, m1, dim))
        rho = np.cbrt(u) if dim == 3 else np.sqrt(u)
        if anisotropic:
            quats = rng.standard_normal((nb, m1 + 1, 4))
            return kern.tree_hits_spherocylinders(
                parents, edges, rho, gauss, quats, diam, radius, halflen
            )
        return kern.tree_hits_spheres(parents, edges, rho, gauss, diam, contact * contact)

    return _run_workers(block_fn, cfg, _stream, prefactor)


def box_cluster_integral_mc(
    g: ClusterGraph,
    shape: Shape,
    cfg: SamplerConfig,
    box_side: float | None = None,
) -> MCEstimate:
    """Hit-or-miss oracle for ``cluster_integral_mc``: free particles
    uniform in a cube around the pinned one, every bond tested.

    The default box side is 2 * (BFS eccentricity of node 1) * contact
    distance, the smallest cube certain to contain the support.
    """
    slot, parent_slot, _tree = _placement(g)
    m1 = g.order - 1
    dim = shape.dim
    diam = contact_diameter(shape, shape)
    if box_side is None:
        depth = [0] * (m1 + 1)
        for t, p in enumerate(parent_slot):
            depth[t + 1] = depth[p] + 1
        box_side = 2.0 * max(depth) * diam
    half = 0.5 * box_side
    prefactor = (-1.0) ** g.size * (box_side**dim) ** m1
    edges = np.array([[slot[u], slot[v]] for u, v in g.edges], dtype=np.intp).reshape(-1, 2)
    kern = _backend.kernels
    contact = 2.0 * shape.radius
    halflen = 0.5 * shape.length
    radius = shape.radius
    anisotropic = shape.is_anisotropic

    def block_fn(rng, nb):
        upos = rng.random((nb, m1, dim))
        if anisotropic:
            quats = rng.standard_normal((nb, m1 + 1, 4))
            return kern.box_hits_spherocylinders(edges, upos, quats, half, radius, halflen)
        return kern.box_hits_spheres(edges, upos, half, contact * contact)

    return _run_workers(block_fn, cfg, (97,), prefactor)


def virial_coefficient_mc(order: int, shape: Shape, cfg: SamplerConfig) -> MCEstimate:
    """B_order from the star-diagram sum: each topology estimated with the
    full ``cfg.samples`` budget on its own stream, weighted by its labeled
    count, and scaled by -(order-1)/order!."""
    if not 2 <= order <= 5:
        raise UnsupportedOrderError(f"virial orders 2..5 supported, got {order}")
    weight = virial_prefactor(order)
    mean = 0.0
    var = 0.0
    samples = 0
    for idx, (g, count) in enumerate(enumerate_stars(order)):
        est = cluster_integral_mc(g, shape, cfg, _stream=(idx,))
        mean += count * est.mean
        var += (count * est.stderr) ** 2
        samples += est.samples
    return MCEstimate(weight * mean, abs(weight) * math.sqrt(var), samples, cfg.seed, cfg.workers)


def sample_tree_configurations(g: ClusterGraph, shape: Shape, seed: int, n: int):
    """Diagnostic: draw ``n`` tree-placed configurations (positions, and
    axes for anisotropic shapes) exactly as the estimator would."""
    from . import _kernels_py

    slot, parent_slot, _tree = _placement(g)
    m1 = g.order - 1
    dim = shape.dim
    diam = contact_diameter(shape, shape)
    rng = _generator(seed, ())
    u = rng.random((n, m1))
    gauss = rng.standard_normal((n, m1, dim))
    rho = np.cbrt(u) if dim == 3 else np.sqrt(u)
    pos = _kernels_py.tree_positions(np.array(parent_slot, dtype=np.intp), rho, gauss, diam)
    axes = None
    if shape.is_anisotropic:
        quats = rng.standard_normal((n, m1 + 1, 4))
        axes = _kernels_py._axes_from_quats(quats)
    return slot, pos, axes


def backend_name() -> str:
    return _backend.backend_name()
