"""Scalar force kernels.

These are the single-pair reference forms of the three forces; the step
backends apply the same math over whole arrays. Conventions:

* ``attractive_force(pos_u, pos_v, k)`` is the force ON v exerted BY u,
  pointing from v toward u, with magnitude ``|d|**2 / k`` for
  ``d = C(u) - C(v)``.
* ``repulsive_force(pos_u, pos_v, k)`` is the force ON v pointing away
  from u, magnitude ``k**2 / |d|``.
* ``geo_force(pos, anchor, K, k)`` pulls a node toward its projected map
  anchor with magnitude ``K * |g|**2 / k`` for ``g = G(u) - C(u)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..graph import VirtualPosition

# Below this separation the repulsive kernel substitutes an epsilon offset
# instead of dividing by ~0.
COINCIDENT_EPS = 1e-9


@dataclass(frozen=True)
class ForceVector:
    fx: float
    fy: float
    fz: float

    def __add__(self, other: "ForceVector") -> "ForceVector":
        return ForceVector(self.fx + other.fx, self.fy + other.fy, self.fz + other.fz)

    def __neg__(self) -> "ForceVector":
        return ForceVector(-self.fx, -self.fy, -self.fz)

    @property
    def magnitude(self) -> float:
        return math.sqrt(self.fx**2 + self.fy**2 + self.fz**2)


def attractive_force(pos_u: VirtualPosition, pos_v: VirtualPosition, k: float) -> ForceVector:
    """Edge attraction on v toward u: ``|d| * d / k`` with ``d = C(u) - C(v)``."""
    dx = pos_u.x - pos_v.x
    dy = pos_u.y - pos_v.y
    dz = pos_u.z - pos_v.z
    dist = math.sqrt(dx * dx + dy * dy + dz * dz)
    return ForceVector(dist * dx / k, dist * dy / k, dist * dz / k)


def repulsive_force(pos_u: VirtualPosition, pos_v: VirtualPosition, k: float) -> ForceVector:
    """All-pairs repulsion on v away from u: ``-k**2 * d / |d|**2``.

    Coincident positions are separated by a deterministic epsilon offset
    along +x (the step backends derive the offset direction from the node
    pair instead, so coincident nodes do not all fly the same way).
    """
    dx = pos_u.x - pos_v.x
    dy = pos_u.y - pos_v.y
    dz = pos_u.z - pos_v.z
    dist2 = dx * dx + dy * dy + dz * dz
    if dist2 < COINCIDENT_EPS * COINCIDENT_EPS:
        dx, dy, dz = COINCIDENT_EPS, 0.0, 0.0
        dist2 = COINCIDENT_EPS * COINCIDENT_EPS
    scale = -(k * k) / dist2
    return ForceVector(scale * dx, scale * dy, scale * dz)


def geo_force(pos: VirtualPosition, anchor: VirtualPosition, K: float, k: float) -> ForceVector:
    """Anchor attraction: ``K * |g| * g / k`` with ``g = G(u) - C(u)``."""
    gx = anchor.x - pos.x
    gy = anchor.y - pos.y
    gz = anchor.z - pos.z
    dist = math.sqrt(gx * gx + gy * gy + gz * gz)
    scale = K * dist / k
    return ForceVector(scale * gx, scale * gy, scale * gz)
