"""Simulation parameters and their defaults.

``k`` balances attraction against repulsion and equals the equilibrium
separation of an isolated connected pair. When left unset it defaults to
``((map_height/2)**3 / n_nodes) ** (1/3)``, the 3D analog of the classic
optimal-distance heuristic with the usable extent taken as half the map
height, so layouts stay scale-stable as graphs grow while a strong
geo-force can still pin nodes tightly to their anchors.

``geo_weight`` (the force balancing parameter) defaults to 5, inside the
recommended 3..20 band: 0 ignores geography entirely, very large values
pin nodes to their map anchors.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field

from ..errors import InvalidInputError
from ..graph import ProjectionConfig

MAX_SEED = 2**64 - 1


@dataclass(frozen=True)
class LayoutParams:
    k: float | None = None
    geo_weight: float = 5.0
    initial_temperature: float | None = None
    cooling_alpha: float = 0.02
    n_iterations: int = 300
    seed: int = 0
    projection: ProjectionConfig = field(default_factory=ProjectionConfig)
    weighted_attraction: bool = False
    init_at_anchors: bool = False

    def __post_init__(self):
        if self.k is not None and not self.k > 0:
            raise InvalidInputError(f"k must be positive, got {self.k}")
        if self.geo_weight < 0:
            raise InvalidInputError(f"geo_weight must be >= 0, got {self.geo_weight}")
        if self.initial_temperature is not None and not self.initial_temperature > 0:
            raise InvalidInputError(
                f"initial_temperature must be positive, got {self.initial_temperature}"
            )
        if not 0.0 < self.cooling_alpha < 1.0:
            raise InvalidInputError(
                f"cooling_alpha must lie in (0, 1), got {self.cooling_alpha}"
            )
        if self.n_iterations < 1:
            raise InvalidInputError(f"n_iterations must be >= 1, got {self.n_iterations}")
        if not 0 <= self.seed <= MAX_SEED:
            raise InvalidInputError("seed must fit in an unsigned 64-bit integer")

    def resolved_k(self, n_nodes: int) -> float:
        if self.k is not None:
            return self.k
        n = max(n_nodes, 1)
        extent = self.projection.map_height / 2.0
        return (extent**3 / n) ** (1.0 / 3.0)

    def resolved_t0(self) -> float:
        if self.initial_temperature is not None:
            return self.initial_temperature
        return self.projection.map_height / 10.0


def update_geo_weight(params: LayoutParams, new_geo_weight: float) -> LayoutParams:
    """Return a copy of ``params`` with the geo-force weight replaced.

    Callers may resume stepping with the result; the temperature is not
    reheated automatically (reheating is a separate explicit control).
    """
    if new_geo_weight < 0:
        raise InvalidInputError(f"geo_weight must be >= 0, got {new_geo_weight}")
    return dataclasses.replace(params, geo_weight=new_geo_weight)
