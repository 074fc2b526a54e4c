"""Pure-numpy Monte Carlo kernels (fallback backend).

Each kernel consumes one block of pre-drawn random variates and returns the
integer count of samples whose f-bond indicators all fire. The compiled
backend implements the same contracts with the same arithmetic on the same
arrays, so hit counts are bit-identical across backends.

All kernels place particle 0 at the origin. Tree kernels place particle
``t+1`` uniformly inside the exclusion ball of radius ``diam`` around its
spanning-tree parent ``parents[t]`` (radius factors ``rho`` are pre-shaped
by the driver: cbrt of a uniform in 3D, sqrt in 2D). Box kernels place
particles uniformly in a cube of half-side ``halfside``.
"""

import numpy as np

BACKEND_NAME = "python"


def _normalize_rows(g):
    if g.shape[-1] == 3:
        norm = np.sqrt(g[..., 0] * g[..., 0] + g[..., 1] * g[..., 1] + g[..., 2] * g[..., 2])
    else:
        norm = np.sqrt(g[..., 0] * g[..., 0] + g[..., 1] * g[..., 1])
    return g / norm[..., None]


def tree_positions(parents, rho, gauss, diam):
    """Positions (n, m, d) of all particles from tree placement variates."""
    n, m1, d = gauss.shape
    step = _normalize_rows(gauss) * (diam * rho)[..., None]
    pos = np.zeros((n, m1 + 1, d))
    for t in range(m1):
        pos[:, t + 1] = pos[:, parents[t]] + step[:, t]
    return pos


def _axes_from_quats(quats):
    norm = np.sqrt(
        quats[..., 0] * quats[..., 0]
        + quats[..., 1] * quats[..., 1]
        + quats[..., 2] * quats[..., 2]
        + quats[..., 3] * quats[..., 3]
    )
    q = quats / norm[..., None]
    w, x, y, z = q[..., 0], q[..., 1], q[..., 2], q[..., 3]
    ax = np.empty(quats.shape[:-1] + (3,))
    ax[..., 0] = 2.0 * (x * z + w * y)
    ax[..., 1] = 2.0 * (y * z - w * x)
    ax[..., 2] = 1.0 - 2.0 * (x * x + y * y)
    return ax


def _pair_dist_sq(pa, pb):
    diff = pa - pb
    out = diff[..., 0] * diff[..., 0] + diff[..., 1] * diff[..., 1]
    if diff.shape[-1] == 3:
        out = out + diff[..., 2] * diff[..., 2]
    return out


def _segment_dist_sq(c1, a1, c2, a2, h):
    """Vectorized squared segment-segment distance, equal half-lengths h.

    Mirrors the scalar clamped two-pass solve operation for operation so
    the compiled backend computes identical bits.
    """
    r = c2 - c1
    b = a1[:, 0] * a2[:, 0] + a1[:, 1] * a2[:, 1] + a1[:, 2] * a2[:, 2]
    d = a1[:, 0] * r[:, 0] + a1[:, 1] * r[:, 1] + a1[:, 2] * r[:, 2]
    e = a2[:, 0] * r[:, 0] + a2[:, 1] * r[:, 1] + a2[:, 2] * r[:, 2]
    det = 1.0 - b * b
    nondeg = det > 1e-14
    s = np.where(nondeg, (d - b * e) / np.where(nondeg, det, 1.0), 0.0)
    s = np.clip(s, -h, h)
    t = b * s - e
    outside = (t < -h) | (t > h)
    t = np.clip(t, -h, h)
    s = np.where(outside, np.clip(d + b * t, -h, h), s)
    diff = (c1 + s[:, None] * a1) - (c2 + t[:, None] * a2)
    return diff[:, 0] * diff[:, 0] + diff[:, 1] * diff[:, 1] + diff[:, 2] * diff[:, 2]


def tree_hits_spheres(parents, edges, rho, gauss, diam, contact_sq):
    """Count samples where every listed edge overlaps (ball/disk pairs)."""
    pos = tree_positions(parents, rho, gauss, diam)
    ok = np.ones(pos.shape[0], dtype=bool)
    for u, v in edges:
        ok &= _pair_dist_sq(pos[:, u], pos[:, v]) < contact_sq
    return int(np.count_nonzero(ok))


def tree_hits_spherocylinders(parents, edges, rho, gauss, quats, diam, radius, halflen):
    pos = tree_positions(parents, rho, gauss, diam)
    axes = _axes_from_quats(quats)
    contact_sq = (2.0 * radius) ** 2
    ok = np.ones(pos.shape[0], dtype=bool)
    for u, v in edges:
        ok &= _segment_dist_sq(pos[:, u], axes[:, u], pos[:, v], axes[:, v], halflen) < contact_sq
    return int(np.count_nonzero(ok))


def box_hits_spheres(edges, upos, halfside, contact_sq):
    """Hit-or-miss oracle: particles 1..m-1 uniform in the box around the
    pinned particle 0."""
    n, m1, d = upos.shape
    pos = np.zeros((n, m1 + 1, d))
    pos[:, 1:] = (2.0 * upos - 1.0) * halfside
    ok = np.ones(n, dtype=bool)
    for u, v in edges:
        ok &= _pair_dist_sq(pos[:, u], pos[:, v]) < contact_sq
    return int(np.count_nonzero(ok))


def box_hits_spherocylinders(edges, upos, quats, halfside, radius, halflen):
    n, m1, _ = upos.shape
    pos = np.zeros((n, m1 + 1, 3))
    pos[:, 1:] = (2.0 * upos - 1.0) * halfside
    axes = _axes_from_quats(quats)
    contact_sq = (2.0 * radius) ** 2
    ok = np.ones(n, dtype=bool)
    for u, v in edges:
        ok &= _segment_dist_sq(pos[:, u], axes[:, u], pos[:, v], axes[:, v], halflen) < contact_sq
    return int(np.count_nonzero(ok))
