"""NumPy fallback step kernel.

Vectorized over the full pairwise displacement matrix; used when the
compiled extension is unavailable or explicitly disabled. Same math as
the compiled kernel; floating-point summation order differs, so the two
backends agree to roundoff on one step but are not bit-identical.
"""

from __future__ import annotations

import numpy as np

from .forces import COINCIDENT_EPS
from .seeding import pair_offset_direction

BACKEND_NAME = "python"


def step_kernel(coords, edge_src, edge_dst, edge_w, anchor_coords, anchored,
                k, geo_weight, temperature, weighted):
    """Advance positions by one iteration, in place.

    ``coords``: (n, 3) float64. ``edge_src``/``edge_dst``: canonical node
    indices per edge with src < dst. ``anchored``: bool mask selecting rows
    of ``anchor_coords`` that hold real anchors.
    """
    n = coords.shape[0]
    force = np.zeros_like(coords)

    # Attraction along edges: d = C(src) - C(dst); |d| d / k on dst, opposite on src.
    if edge_src.size:
        d = coords[edge_src] - coords[edge_dst]
        dist = np.sqrt((d * d).sum(axis=1))
        scale = dist / k
        if weighted:
            scale = scale * edge_w
        f = d * scale[:, None]
        np.add.at(force, edge_dst, f)
        np.add.at(force, edge_src, -f)

    # Repulsion over all ordered pairs: -k^2 d / |d|^2 on v, d = C(u) - C(v).
    if n > 1:
        diff = coords[None, :, :] - coords[:, None, :]  # diff[v, u] = C(u) - C(v)
        dist2 = (diff * diff).sum(axis=2)
        near = dist2 < COINCIDENT_EPS * COINCIDENT_EPS
        np.fill_diagonal(near, False)
        if near.any():
            for v, u in np.argwhere(near):
                i, j = (u, v) if u < v else (v, u)
                direction = np.array(pair_offset_direction(int(i), int(j)))
                if u > v:
                    direction = -direction
                # diff[v, u] = C(u) - C(v): epsilon offset pointing from v to u
                diff[v, u] = direction * COINCIDENT_EPS
                dist2[v, u] = COINCIDENT_EPS * COINCIDENT_EPS
        np.fill_diagonal(dist2, 1.0)
        diff[np.arange(n), np.arange(n)] = 0.0
        force -= (k * k) * (diff / dist2[:, :, None]).sum(axis=1)

    # Geo-force toward projected anchors: K |g| g / k.
    if geo_weight > 0 and anchored.any():
        g = anchor_coords - coords
        gdist = np.sqrt((g * g).sum(axis=1))
        gscale = np.where(anchored, geo_weight * gdist / k, 0.0)
        force += g * gscale[:, None]

    # Displacement capped at the current temperature; zero net force stays put.
    norm = np.sqrt((force * force).sum(axis=1))
    moving = norm > 0.0
    step = np.minimum(norm[moving], temperature) / norm[moving]
    coords[moving] += force[moving] * step[:, None]
