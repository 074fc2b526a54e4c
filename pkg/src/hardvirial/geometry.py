"""Convex hard bodies in 2D and 3D: overlap tests, support points, surface
sampling, principal curvatures, and Minkowski functionals (intrinsic volumes).

All operations are pure functions of immutable value types; shapes carry no
pose, poses are passed alongside. Supported bodies are the ball (3D), the
disk (2D), and the spherocylinder (3D capsule: cylinder of length ``length``
with hemispherical caps of radius ``radius``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

BALL = "ball"
DISK = "disk"
SPHEROCYLINDER = "spherocylinder"

_KINDS = (BALL, DISK, SPHEROCYLINDER)

# Absolute on-surface tolerance, in units of the shape radius.
SURFACE_TOLERANCE = 1e-9

_QUAT_TOLERANCE = 1e-12


class NoIntersectionError(ValueError):
    """Raised when an intersection-manifold quantity is requested for
    surfaces that do not intersect."""


@dataclass(frozen=True)
class Shape:
    """A convex hard body.

    ``length`` is the cylinder length of a spherocylinder and must be 0 for
    balls and disks. The embedding dimension follows from the kind: disks
    live in the plane, balls and spherocylinders in 3-space.
    """

    kind: str
    radius: float
    length: float = 0.0

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown shape kind {self.kind!r}")
        if not self.radius > 0.0:
            raise ValueError(f"radius must be positive, got {self.radius}")
        if self.kind == SPHEROCYLINDER:
            if self.length < 0.0:
                raise ValueError(f"length must be >= 0, got {self.length}")
        elif self.length != 0.0:
            raise ValueError(f"{self.kind} does not take a length")

    @property
    def dim(self) -> int:
        return 2 if self.kind == DISK else 3

    @property
    def is_anisotropic(self) -> bool:
        return self.kind == SPHEROCYLINDER and self.length > 0.0


def ball(radius: float) -> Shape:
    return Shape(BALL, radius)


def disk(radius: float) -> Shape:
    return Shape(DISK, radius)


def spherocylinder(radius: float, length: float) -> Shape:
    return Shape(SPHEROCYLINDER, radius, length)


@dataclass(frozen=True, eq=False)
class Pose:
    """Rigid placement: position in R^dim plus a rotation.

    The rotation is a plane angle in radians for 2D poses and a unit
    quaternion (w, x, y, z) for 3D poses.
    """

    position: np.ndarray
    orientation: float | np.ndarray = 0.0

    def __post_init__(self):
        pos = np.asarray(self.position, dtype=float)
        object.__setattr__(self, "position", pos)
        if pos.shape not in ((2,), (3,)):
            raise ValueError("position must be a 2- or 3-vector")
        if pos.shape == (3,):
            q = np.asarray(self.orientation, dtype=float)
            if np.isscalar(self.orientation) or q.shape == ():
                # accept scalar 0.0 as the identity rotation for convenience
                q = np.array([1.0, 0.0, 0.0, 0.0])
            if q.shape != (4,):
                raise ValueError("3D orientation must be a quaternion (w,x,y,z)")
            if abs(math.sqrt(float(q @ q)) - 1.0) > _QUAT_TOLERANCE:
                raise ValueError("quaternion must be normalized to 1e-12")
            object.__setattr__(self, "orientation", q)
        else:
            object.__setattr__(self, "orientation", float(self.orientation))

    @property
    def dim(self) -> int:
        return self.position.shape[0]


def identity_pose(dim: int) -> Pose:
    if dim == 2:
        return Pose(np.zeros(2), 0.0)
    return Pose(np.zeros(3), np.array([1.0, 0.0, 0.0, 0.0]))


def random_orientation(dim: int, rng: np.random.Generator):
    """Haar-uniform rotation: normalized 4-Gaussian quaternion in 3D, a
    uniform angle in [0, 2pi) in 2D."""
    if dim == 2:
        return float(rng.uniform(0.0, 2.0 * math.pi))
    q = rng.standard_normal(4)
    return q / math.sqrt(float(q @ q))


def random_pose(dim: int, rng: np.random.Generator, box: float = 1.0) -> Pose:
    """Uniform position in [-box, box]^dim with a Haar-uniform rotation."""
    return Pose(rng.uniform(-box, box, size=dim), random_orientation(dim, rng))


def quat_rotate(q: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Rotate vector(s) v by unit quaternion q = (w, x, y, z)."""
    w, x, y, z = q
    u = np.array([x, y, z])
    return 2.0 * np.dot(v, u) * u + (w * w - u @ u) * np.asarray(v) + 2.0 * w * np.cross(u, v)


def body_axis(pose: Pose) -> np.ndarray:
    """Symmetry axis of a posed 3D body (image of e_z under the rotation)."""
    w, x, y, z = pose.orientation
    return np.array([2.0 * (x * z + w * y), 2.0 * (y * z - w * x), 1.0 - 2.0 * (x * x + y * y)])


@dataclass(frozen=True)
class MinkowskiData:
    """Intrinsic volumes of a convex body.

    ``mean_curvature_integral`` is the 3D surface integral of
    (kappa_1 + kappa_2)/2 and is None for 2D bodies. ``euler_integral`` is
    the Gauss-Bonnet integral: 4pi for every 3D convex body, 2pi in 2D.
    """

    volume: float
    surface: float
    mean_curvature_integral: float | None
    euler_integral: float


def minkowski_functionals(shape: Shape) -> MinkowskiData:
    """Closed-form intrinsic volumes for the supported shapes."""
    r, ell = shape.radius, shape.length
    if shape.kind == BALL:
        return MinkowskiData(
            volume=4.0 * math.pi / 3.0 * r**3,
            surface=4.0 * math.pi * r**2,
            mean_curvature_integral=4.0 * math.pi * r,
            euler_integral=4.0 * math.pi,
        )
    if shape.kind == DISK:
        return MinkowskiData(
            volume=math.pi * r**2,
            surface=2.0 * math.pi * r,
            mean_curvature_integral=None,
            euler_integral=2.0 * math.pi,
        )
    # spherocylinder: cylinder mantle plus two hemispherical caps
    return MinkowskiData(
        volume=math.pi * r**2 * ell + 4.0 * math.pi / 3.0 * r**3,
        surface=2.0 * math.pi * r * ell + 4.0 * math.pi * r**2,
        mean_curvature_integral=math.pi * ell + 4.0 * math.pi * r,
        euler_integral=4.0 * math.pi,
    )


def support_point(shape: Shape, pose: Pose, direction) -> np.ndarray:
    """Point of the posed body with maximal projection onto ``direction``."""
    d = np.asarray(direction, dtype=float)
    n = float(np.sqrt(d @ d))
    if n == 0.0:
        raise ValueError("support direction must be non-zero")
    if d.shape[0] != shape.dim:
        raise ValueError("direction dimension does not match shape")
    d = d / n
    p = pose.position + shape.radius * d
    if shape.kind == SPHEROCYLINDER and shape.length > 0.0:
        axis = body_axis(pose)
        h = 0.5 * shape.length
        p = p + (h if axis @ d >= 0.0 else -h) * axis
    return p


def _segment_of(shape: Shape, pose: Pose):
    """Center, unit axis and half-length of the core segment (length 0 for
    balls)."""
    if shape.kind == SPHEROCYLINDER and shape.length > 0.0:
        return pose.position, body_axis(pose), 0.5 * shape.length
    return pose.position, np.array([0.0, 0.0, 1.0]), 0.0


def segment_distance_sq(c1, a1, h1, c2, a2, h2) -> float:
    """Squared distance between segments c_i + s a_i, s in [-h_i, h_i].

    Clamped two-pass closest-point solve; exact for all configurations
    including parallel axes.
    """
    r = c2 - c1
    b = float(a1 @ a2)
    d = float(a1 @ r)
    e = float(a2 @ r)
    det = 1.0 - b * b
    s = (d - b * e) / det if det > 1e-14 else 0.0
    s = min(max(s, -h1), h1)
    t = b * s - e
    if t < -h2:
        t = -h2
        s = min(max(d + b * t, -h1), h1)
    elif t > h2:
        t = h2
        s = min(max(d + b * t, -h1), h1)
    diff = (c1 + s * a1) - (c2 + t * a2)
    return float(diff @ diff)


def overlap(a: Shape, pa: Pose, b: Shape, pb: Pose) -> bool:
    """True iff the interiors intersect. Tangency counts as non-overlap."""
    if a.dim != b.dim:
        raise ValueError("cannot test overlap across dimensions")
    contact = a.radius + b.radius
    if a.kind != SPHEROCYLINDER and b.kind != SPHEROCYLINDER:
        diff = pa.position - pb.position
        return float(diff @ diff) < contact * contact
    c1, a1, h1 = _segment_of(a, pa)
    c2, a2, h2 = _segment_of(b, pb)
    return segment_distance_sq(c1, a1, h1, c2, a2, h2) < contact * contact


def support_separated(a: Shape, pa: Pose, b: Shape, pb: Pose, directions) -> bool:
    """Cross-check path: report whether any of the candidate directions
    separates the support projections of the two bodies.

    A True result certifies non-overlap; False is inconclusive for general
    bodies (it is conclusive for ball pairs when the center line is among
    the candidates).
    """
    for d in np.atleast_2d(np.asarray(directions, dtype=float)):
        ha = float(support_point(a, pa, d) @ d) / float(np.sqrt(d @ d))
        hb = float(support_point(b, pb, -d) @ -d) / float(np.sqrt(d @ d))
        if ha + hb < 0.0:
            return True
    return False


def contact_diameter(a: Shape, b: Shape) -> float:
    """Largest center distance at which the two bodies can still touch."""
    return a.radius + b.radius + 0.5 * (a.length + b.length)


def ball_volume(dim: int, radius: float) -> float:
    """Volume of the dim-ball (area of the disk in 2D)."""
    if dim == 2:
        return math.pi * radius**2
    if dim == 3:
        return 4.0 * math.pi / 3.0 * radius**3
    raise ValueError(f"unsupported dimension {dim}")


def principal_curvatures(shape: Shape, surface_point) -> tuple[float, ...]:
    """Principal curvatures at a body-frame surface point, outward-normal
    convention (sphere of radius R gives 1/R)."""
    p = np.asarray(surface_point, dtype=float)
    if p.shape[0] != shape.dim:
        raise ValueError("point dimension does not match shape")
    tol = SURFACE_TOLERANCE * shape.radius
    r = shape.radius
    if shape.kind == BALL:
        if abs(math.sqrt(float(p @ p)) - r) > tol:
            raise ValueError("point is not on the ball surface")
        return (1.0 / r, 1.0 / r)
    if shape.kind == DISK:
        if abs(math.sqrt(float(p @ p)) - r) > tol:
            raise ValueError("point is not on the disk boundary")
        return (1.0 / r,)
    h = 0.5 * shape.length
    rho = math.hypot(p[0], p[1])
    if abs(p[2]) <= h:
        if abs(rho - r) > tol:
            raise ValueError("point is not on the spherocylinder surface")
        return (1.0 / r, 0.0)
    zc = h if p[2] > 0.0 else -h
    dist = math.sqrt(rho * rho + (p[2] - zc) ** 2)
    if abs(dist - r) > tol:
        raise ValueError("point is not on the spherocylinder surface")
    return (1.0 / r, 1.0 / r)


def surface_sample(shape: Shape, rng: np.random.Generator):
    """One point uniform on the body surface (body frame).

    Returns (point, outward normal, total surface measure); the measure is
    the exact closed-form area, carried so that surface quadratures are
    normalized without estimation error.
    """
    pts, normals, _curv, total = surface_sample_batch(shape, rng, 1)
    return pts[0], normals[0], total


def surface_sample_batch(shape: Shape, rng: np.random.Generator, n: int):
    """Vectorized surface sampler.

    Returns (points, normals, curvatures, total measure) with shapes
    (n, dim), (n, dim), (n, dim-1). Sampling is uniform with respect to
    surface area; curvatures come free from the region classification.
    """
    r = shape.radius
    if shape.kind == BALL:
        g = rng.standard_normal((n, 3))
        normals = g / np.linalg.norm(g, axis=1, keepdims=True)
        curv = np.full((n, 2), 1.0 / r)
        return r * normals, normals, curv, 4.0 * math.pi * r**2
    if shape.kind == DISK:
        theta = rng.uniform(0.0, 2.0 * math.pi, size=n)
        normals = np.stack([np.cos(theta), np.sin(theta)], axis=1)
        curv = np.full((n, 1), 1.0 / r)
        return r * normals, normals, curv, 2.0 * math.pi * r
    ell = shape.length
    h = 0.5 * ell
    area_mantle = 2.0 * math.pi * r * ell
    area_caps = 4.0 * math.pi * r**2
    total = area_mantle + area_caps
    on_mantle = rng.random(n) < area_mantle / total
    theta = rng.uniform(0.0, 2.0 * math.pi, size=n)
    z = rng.uniform(-h, h, size=n)
    g = rng.standard_normal((n, 3))
    cap_dir = g / np.linalg.norm(g, axis=1, keepdims=True)
    cap_center = np.where(cap_dir[:, 2] > 0.0, h, -h)

    points = np.empty((n, 3))
    normals = np.empty((n, 3))
    curv = np.empty((n, 2))
    normals[:, 0] = np.where(on_mantle, np.cos(theta), cap_dir[:, 0])
    normals[:, 1] = np.where(on_mantle, np.sin(theta), cap_dir[:, 1])
    normals[:, 2] = np.where(on_mantle, 0.0, cap_dir[:, 2])
    points[:, 0] = r * normals[:, 0]
    points[:, 1] = r * normals[:, 1]
    points[:, 2] = np.where(on_mantle, z, cap_center + r * cap_dir[:, 2])
    curv[:, 0] = 1.0 / r
    curv[:, 1] = np.where(on_mantle, 0.0, 1.0 / r)
    return points, normals, curv, total


def intersection_angle(a: Shape, pa: Pose, b: Shape, pb: Pose) -> float:
    """Dihedral angle between outward normals on the sphere-sphere
    intersection circle: arccos[(Ra^2 + Rb^2 - d^2)/(2 Ra Rb)].

    External tangency (d = Ra + Rb) maps to pi, internal tangency to 0.
    """
    if a.kind != BALL or b.kind != BALL:
        raise ValueError("intersection angle is defined for ball pairs")
    ra, rb = a.radius, b.radius
    diff = pa.position - pb.position
    d = math.sqrt(float(diff @ diff))
    if d > ra + rb or d < abs(ra - rb):
        raise NoIntersectionError(
            f"sphere surfaces do not intersect (d={d:.6g}, radii {ra:.6g}, {rb:.6g})"
        )
    cosphi = (ra * ra + rb * rb - d * d) / (2.0 * ra * rb)
    return math.acos(min(1.0, max(-1.0, cosphi)))
