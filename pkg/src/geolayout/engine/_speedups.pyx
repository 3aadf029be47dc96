# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled step kernel: sequential O(n^2) pairwise loop.

Same math as the NumPy fallback in _kernel_py; node and edge iteration
order is fixed so results are deterministic.
"""

import numpy as np

from libc.math cimport sqrt, cos, sin, fmin, M_PI

BACKEND_NAME = "compiled"

cdef double COINCIDENT_EPS = 1e-9

cdef unsigned long long GOLDEN = 0x9E3779B97F4A7C15ULL
cdef unsigned long long MIX1 = 0xBF58476D1CE4E5B9ULL
cdef unsigned long long MIX2 = 0x94D049BB133111EBULL


cdef inline unsigned long long _mix64(unsigned long long value) nogil:
    cdef unsigned long long z = value + GOLDEN
    z = (z ^ (z >> 30)) * MIX1
    z = (z ^ (z >> 27)) * MIX2
    return z ^ (z >> 31)


cdef inline void _pair_offset(Py_ssize_t i, Py_ssize_t j, double* out) nogil:
    # Unit sphere direction from the canonical pair (i < j); matches
    # seeding.pair_offset_direction exactly.
    cdef unsigned long long h1 = _mix64(((<unsigned long long> i) << 32) | (<unsigned long long> j & 0xFFFFFFFFULL))
    cdef unsigned long long h2 = _mix64(h1)
    cdef double z = 2.0 * (<double> h1 / 18446744073709551616.0) - 1.0
    cdef double phi = 2.0 * M_PI * (<double> h2 / 18446744073709551616.0)
    cdef double r2 = 1.0 - z * z
    cdef double r = sqrt(r2) if r2 > 0.0 else 0.0
    out[0] = r * cos(phi)
    out[1] = r * sin(phi)
    out[2] = z


def step_kernel(double[:, ::1] coords, long long[::1] edge_src, long long[::1] edge_dst,
                double[::1] edge_w, double[:, ::1] anchor_coords,
                unsigned char[::1] anchored, double k, double geo_weight,
                double temperature, bint weighted):
    """Advance positions by one iteration, in place. See _kernel_py.step_kernel."""
    cdef Py_ssize_t n = coords.shape[0]
    cdef Py_ssize_t m = edge_src.shape[0]
    cdef double[:, ::1] force = np.zeros((n, 3), dtype=np.float64)
    cdef Py_ssize_t e, u, v, a, b
    cdef double dx, dy, dz, dist, dist2, scale, norm, cap
    cdef double direction[3]

    with nogil:
        # Step 1: attraction along edges.
        for e in range(m):
            a = <Py_ssize_t> edge_src[e]
            b = <Py_ssize_t> edge_dst[e]
            dx = coords[a, 0] - coords[b, 0]
            dy = coords[a, 1] - coords[b, 1]
            dz = coords[a, 2] - coords[b, 2]
            dist = sqrt(dx * dx + dy * dy + dz * dz)
            scale = dist / k
            if weighted:
                scale = scale * edge_w[e]
            force[b, 0] += scale * dx
            force[b, 1] += scale * dy
            force[b, 2] += scale * dz
            force[a, 0] -= scale * dx
            force[a, 1] -= scale * dy
            force[a, 2] -= scale * dz

        # Step 2: repulsion over all ordered pairs (u acts on v).
        for v in range(n):
            for u in range(n):
                if u == v:
                    continue
                dx = coords[u, 0] - coords[v, 0]
                dy = coords[u, 1] - coords[v, 1]
                dz = coords[u, 2] - coords[v, 2]
                dist2 = dx * dx + dy * dy + dz * dz
                if dist2 < COINCIDENT_EPS * COINCIDENT_EPS:
                    if u < v:
                        _pair_offset(u, v, direction)
                    else:
                        _pair_offset(v, u, direction)
                        direction[0] = -direction[0]
                        direction[1] = -direction[1]
                        direction[2] = -direction[2]
                    dx = direction[0] * COINCIDENT_EPS
                    dy = direction[1] * COINCIDENT_EPS
                    dz = direction[2] * COINCIDENT_EPS
                    dist2 = COINCIDENT_EPS * COINCIDENT_EPS
                scale = -(k * k) / dist2
                force[v, 0] += scale * dx
                force[v, 1] += scale * dy
                force[v, 2] += scale * dz

        # Step 3: geo-force toward the projected anchor.
        if geo_weight > 0.0:
            for v in range(n):
                if anchored[v]:
                    dx = anchor_coords[v, 0] - coords[v, 0]
                    dy = anchor_coords[v, 1] - coords[v, 1]
                    dz = anchor_coords[v, 2] - coords[v, 2]
                    dist = sqrt(dx * dx + dy * dy + dz * dz)
                    scale = geo_weight * dist / k
                    force[v, 0] += scale * dx
                    force[v, 1] += scale * dy
                    force[v, 2] += scale * dz

        # Step 4: move along the net force, capped at the temperature.
        for v in range(n):
            norm = sqrt(force[v, 0] * force[v, 0] + force[v, 1] * force[v, 1]
                        + force[v, 2] * force[v, 2])
            if norm > 0.0:
                cap = fmin(temperature, norm) / norm
                coords[v, 0] += force[v, 0] * cap
                coords[v, 1] += force[v, 1] * cap
                coords[v, 2] += force[v, 2] * cap
