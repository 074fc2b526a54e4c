# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled Monte Carlo kernels (hot loops).

Same contracts and the same floating-point operation order as
``_kernels_py``; given identical input arrays both backends return identical
hit counts. See the fallback module for the argument conventions.
"""

from libc.math cimport sqrt

BACKEND_NAME = "cython"

DEF MAX_NODES = 8


cdef inline double _clip(double x, double lo, double hi) nogil:
    if x < lo:
        return lo
    elif x > hi:
        return hi
    return x


cdef inline double _seg_dist_sq(double* c1, double* a1, double* c2, double* a2,
                                double h) nogil:
    cdef double rx = c2[0] - c1[0]
    cdef double ry = c2[1] - c1[1]
    cdef double rz = c2[2] - c1[2]
    cdef double b = a1[0] * a2[0] + a1[1] * a2[1] + a1[2] * a2[2]
    cdef double d = a1[0] * rx + a1[1] * ry + a1[2] * rz
    cdef double e = a2[0] * rx + a2[1] * ry + a2[2] * rz
    cdef double det = 1.0 - b * b
    cdef double s, t, dx, dy, dz
    if det > 1e-14:
        s = (d - b * e) / det
    else:
        s = 0.0
    s = _clip(s, -h, h)
    t = b * s - e
    if t < -h or t > h:
        t = _clip(t, -h, h)
        s = _clip(d + b * t, -h, h)
    dx = (c1[0] + s * a1[0]) - (c2[0] + t * a2[0])
    dy = (c1[1] + s * a1[1]) - (c2[1] + t * a2[1])
    dz = (c1[2] + s * a1[2]) - (c2[2] + t * a2[2])
    return dx * dx + dy * dy + dz * dz


cdef inline void _tree_fill(double[MAX_NODES][3] pos, Py_ssize_t[::1] parents,
                            const double[:, ::1] rho, const double[:, :, ::1] gauss,
                            double diam, Py_ssize_t i, Py_ssize_t m1,
                            Py_ssize_t d) nogil:
    cdef Py_ssize_t t, c, par
    cdef double norm2, norm, r
    for c in range(d):
        pos[0][c] = 0.0
    for t in range(m1):
        norm2 = 0.0
        for c in range(d):
            norm2 += gauss[i, t, c] * gauss[i, t, c]
        norm = sqrt(norm2)
        r = diam * rho[i, t]
        par = parents[t]
        for c in range(d):
            pos[t + 1][c] = pos[par][c] + (gauss[i, t, c] / norm) * r


cdef inline void _fill_axes(double[MAX_NODES][3] axes, const double[:, :, ::1] quats,
                            Py_ssize_t i, Py_ssize_t m) nogil:
    cdef Py_ssize_t p
    cdef double norm, w, x, y, z
    for p in range(m):
        w = quats[i, p, 0]
        x = quats[i, p, 1]
        y = quats[i, p, 2]
        z = quats[i, p, 3]
        norm = sqrt(w * w + x * x + y * y + z * z)
        w = w / norm
        x = x / norm
        y = y / norm
        z = z / norm
        axes[p][0] = 2.0 * (x * z + w * y)
        axes[p][1] = 2.0 * (y * z - w * x)
        axes[p][2] = 1.0 - 2.0 * (x * x + y * y)


def tree_hits_spheres(parents, edges, rho, gauss, double diam, double contact_sq):
    cdef Py_ssize_t[::1] par = parents
    cdef Py_ssize_t[:, ::1] edg = edges
    cdef const double[:, ::1] rh = rho
    cdef const double[:, :, ::1] ga = gauss
    cdef Py_ssize_t n = ga.shape[0]
    cdef Py_ssize_t m1 = ga.shape[1]
    cdef Py_ssize_t d = ga.shape[2]
    cdef Py_ssize_t ne = edg.shape[0]
    cdef Py_ssize_t i, e, c, u, v
    cdef double pos[MAX_NODES][3]
    cdef double dist2, diff
    cdef long long hits = 0
    cdef bint ok
    if m1 + 1 > MAX_NODES:
        raise ValueError("graph order exceeds kernel capacity")
    with nogil:
        for i in range(n):
            _tree_fill(pos, par, rh, ga, diam, i, m1, d)
            ok = True
            for e in range(ne):
                u = edg[e, 0]
                v = edg[e, 1]
                dist2 = 0.0
                for c in range(d):
                    diff = pos[u][c] - pos[v][c]
                    dist2 += diff * diff
                if not dist2 < contact_sq:
                    ok = False
                    break
            if ok:
                hits += 1
    return int(hits)


def tree_hits_spherocylinders(parents, edges, rho, gauss, quats, double diam,
                              double radius, double halflen):
    cdef Py_ssize_t[::1] par = parents
    cdef Py_ssize_t[:, ::1] edg = edges
    cdef const double[:, ::1] rh = rho
    cdef const double[:, :, ::1] ga = gauss
    cdef const double[:, :, ::1] qu = quats
    cdef Py_ssize_t n = ga.shape[0]
    cdef Py_ssize_t m1 = ga.shape[1]
    cdef Py_ssize_t ne = edg.shape[0]
    cdef Py_ssize_t i, e, u, v
    cdef double pos[MAX_NODES][3]
    cdef double axes[MAX_NODES][3]
    cdef double contact_sq = (2.0 * radius) * (2.0 * radius)
    cdef long long hits = 0
    cdef bint ok
    if m1 + 1 > MAX_NODES:
        raise ValueError("graph order exceeds kernel capacity")
    with nogil:
        for i in range(n):
            _tree_fill(pos, par, rh, ga, diam, i, m1, 3)
            _fill_axes(axes, qu, i, m1 + 1)
            ok = True
            for e in range(ne):
                u = edg[e, 0]
                v = edg[e, 1]
                if not _seg_dist_sq(pos[u], axes[u], pos[v], axes[v], halflen) < contact_sq:
                    ok = False
                    break
            if ok:
                hits += 1
    return int(hits)


def box_hits_spheres(edges, upos, double halfside, double contact_sq):
    cdef Py_ssize_t[:, ::1] edg = edges
    cdef const double[:, :, ::1] up = upos
    cdef Py_ssize_t n = up.shape[0]
    cdef Py_ssize_t m1 = up.shape[1]
    cdef Py_ssize_t d = up.shape[2]
    cdef Py_ssize_t ne = edg.shape[0]
    cdef Py_ssize_t i, t, e, c, u, v
    cdef double pos[MAX_NODES][3]
    cdef double dist2, diff
    cdef long long hits = 0
    cdef bint ok
    if m1 + 1 > MAX_NODES:
        raise ValueError("graph order exceeds kernel capacity")
    with nogil:
        for i in range(n):
            for c in range(d):
                pos[0][c] = 0.0
            for t in range(m1):
                for c in range(d):
                    pos[t + 1][c] = (2.0 * up[i, t, c] - 1.0) * halfside
            ok = True
            for e in range(ne):
                u = edg[e, 0]
                v = edg[e, 1]
                dist2 = 0.0
                for c in range(d):
                    diff = pos[u][c] - pos[v][c]
                    dist2 += diff * diff
                if not dist2 < contact_sq:
                    ok = False
                    break
            if ok:
                hits += 1
    return int(hits)


def box_hits_spherocylinders(edges, upos, quats, double halfside, double radius,
                             double halflen):
    cdef Py_ssize_t[:, ::1] edg = edges
    cdef const double[:, :, ::1] up = upos
    cdef const double[:, :, ::1] qu = quats
    cdef Py_ssize_t n = up.shape[0]
    cdef Py_ssize_t m1 = up.shape[1]
    cdef Py_ssize_t ne = edg.shape[0]
    cdef Py_ssize_t i, t, e, c, u, v
    cdef double pos[MAX_NODES][3]
    cdef double axes[MAX_NODES][3]
    cdef double contact_sq = (2.0 * radius) * (2.0 * radius)
    cdef long long hits = 0
    cdef bint ok
    if m1 + 1 > MAX_NODES:
        raise ValueError("graph order exceeds kernel capacity")
    with nogil:
        for i in range(n):
            for c in range(3):
                pos[0][c] = 0.0
            for t in range(m1):
                for c in range(3):
                    pos[t + 1][c] = (2.0 * up[i, t, c] - 1.0) * halfside
            _fill_axes(axes, qu, i, m1 + 1)
            ok = True
            for e in range(ne):
                u = edg[e, 0]
                v = edg[e, 1]
                if not _seg_dist_sq(pos[u], axes[u], pos[v], axes[v], halflen) < contact_sq:
                    ok = False
                    break
            if ok:
                hits += 1
    return int(hits)
