"""Layout state: per-node positions plus the annealing bookkeeping."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..graph import Graph, VirtualPosition


@dataclass(frozen=True)
class LayoutState:
    """Snapshot of a simulation.

    ``coords`` rows follow ``ids`` (canonical id order). ``anchor_coords``
    holds the projected geo anchor per node; rows where ``anchored`` is
    False are zero and unused. Arrays are treated as read-only; stepping
    produces a new state.
    """

    ids: tuple[str, ...]
    coords: np.ndarray
    temperature: float
    iteration: int
    anchor_coords: np.ndarray
    anchored: np.ndarray

    @property
    def positions(self) -> dict[str, VirtualPosition]:
        return {
            node_id: VirtualPosition(*self.coords[i])
            for i, node_id in enumerate(self.ids)
        }

    @property
    def geo_anchors(self) -> dict[str, VirtualPosition | None]:
        return {
            node_id: VirtualPosition(*self.anchor_coords[i]) if self.anchored[i] else None
            for i, node_id in enumerate(self.ids)
        }

    def position_of(self, node_id: str) -> VirtualPosition:
        return VirtualPosition(*self.coords[self.ids.index(node_id)])

    def consistent_with(self, graph: Graph) -> bool:
        return self.ids == graph.node_ids and self.coords.shape == (len(self.ids), 3)
