"""The annealing simulation loop.

One iteration does, in order: zero net forces, accumulate edge attraction,
accumulate all-pairs repulsion, add the geo-force for anchored nodes, move
every node along its net force by at most the current temperature, then
decay the temperature by (1 - alpha). Repeating this from seeded initial
positions is fully deterministic for a fixed (graph, params).
"""

from __future__ import annotations

import numpy as np

from ..errors import InvalidInputError
from ..graph import Graph, project_geo
from .backend import step_kernel
from .params import LayoutParams
from .seeding import SplitMix64
from .state import LayoutState


def initial_coords(graph: Graph, params: LayoutParams,
                   anchor_coords: np.ndarray, anchored: np.ndarray) -> np.ndarray:
    """Seeded starting positions, uniform in the projection bounding box.

    Three SplitMix64 draws per node in canonical id order: x spans the map
    width, y the map height, z lies in [0, 2 * anchor_height]. With
    ``init_at_anchors`` set, anchored nodes start on their anchors instead
    (their draws are still consumed, keeping the stream stable).
    """
    cfg = params.projection
    rng = SplitMix64(params.seed)
    n = len(graph)
    coords = np.empty((n, 3), dtype=np.float64)
    for i in range(n):
        ux, uy, uz = rng.next_double(), rng.next_double(), rng.next_double()
        coords[i, 0] = (ux - 0.5) * cfg.map_width
        coords[i, 1] = (uy - 0.5) * cfg.map_height
        coords[i, 2] = uz * 2.0 * cfg.anchor_height
        if params.init_at_anchors and anchored[i]:
            coords[i] = anchor_coords[i]
    return coords


class Simulation:
    """Owns one simulation run: graph indexing, state, and stepping.

    Not reentrant; a instance belongs to one logical execution context.
    ``params`` may be swapped between iterations (live geo-weight updates),
    taking effect at the next step.
    """

    def __init__(self, graph: Graph, params: LayoutParams,
                 state: LayoutState | None = None):
        self.graph = graph
        self.params = params
        ids = graph.node_ids
        index = {node_id: i for i, node_id in enumerate(ids)}
        self._ids = ids

        edges = graph.edges
        self._edge_src = np.array([index[e.source] for e in edges], dtype=np.int64)
        self._edge_dst = np.array([index[e.target] for e in edges], dtype=np.int64)
        self._edge_w = np.array([e.weight for e in edges], dtype=np.float64)

        n = len(ids)
        self._anchor = np.zeros((n, 3), dtype=np.float64)
        self._anchored = np.zeros(n, dtype=np.uint8)
        for i, node_id in enumerate(ids):
            geo = graph.node(node_id).geo
            if geo is not None:
                pos = project_geo(geo, params.projection)
                self._anchor[i] = (pos.x, pos.y, pos.z)
                self._anchored[i] = 1

        if state is None:
            self._coords = initial_coords(graph, params, self._anchor,
                                          self._anchored.astype(bool))
            self._temperature = params.resolved_t0()
            self._iteration = 0
        else:
            if state.ids != ids or state.coords.shape != (n, 3):
                raise InvalidInputError("layout state is inconsistent with the graph")
            self._coords = np.array(state.coords, dtype=np.float64)
            self._temperature = state.temperature
            self._iteration = state.iteration

        self._k = params.resolved_k(n)

    @property
    def iteration(self) -> int:
        return self._iteration

    @property
    def temperature(self) -> float:
        return self._temperature

    @property
    def coords(self) -> np.ndarray:
        return self._coords

    @property
    def ids(self) -> tuple[str, ...]:
        return self._ids

    def set_params(self, params: LayoutParams) -> None:
        """Swap parameters between iterations (e.g. a live geo-weight change)."""
        self.params = params
        self._k = params.resolved_k(len(self._ids))

    def reheat(self, temperature: float) -> None:
        if temperature <= 0:
            raise InvalidInputError(f"temperature must be positive, got {temperature}")
        self._temperature = temperature

    def step(self) -> None:
        """Run one iteration in place."""
        step_kernel(self._coords, self._edge_src, self._edge_dst, self._edge_w,
                    self._anchor, self._anchored, self._k,
                    self.params.geo_weight, self._temperature,
                    self.params.weighted_attraction)
        self._temperature *= 1.0 - self.params.cooling_alpha
        self._iteration += 1

    def run(self, iterations: int) -> None:
        for _ in range(iterations):
            self.step()

    def state(self) -> LayoutState:
        return LayoutState(
            ids=self._ids,
            coords=self._coords.copy(),
            temperature=self._temperature,
            iteration=self._iteration,
            anchor_coords=self._anchor.copy(),
            anchored=self._anchored.astype(bool),
        )


def step(graph: Graph, state: LayoutState, params: LayoutParams) -> LayoutState:
    """Apply one iteration to an existing state, returning the new state."""
    sim = Simulation(graph, params, state=state)
    sim.step()
    return sim.state()


def simulate(graph: Graph, params: LayoutParams) -> LayoutState:
    """Run a full layout from seeded initial positions."""
    sim = Simulation(graph, params)
    sim.run(params.n_iterations)
    return sim.state()
