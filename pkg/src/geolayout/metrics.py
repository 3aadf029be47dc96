"""Layout-quality metrics: edge length variation and mean locational offset.

Edge length variation (ELV) is a normalized standard deviation of edge
lengths; it rises as geographic constraints stretch semantic clusters
apart. Mean locational offset (MLO) is the average horizontal distance
between each anchored node and its projected map anchor, normalized by
the pole-to-pole map distance; it falls as the geo-force strengthens.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .engine.state import LayoutState
from .errors import DegenerateLayoutError, UndefinedMetricError
from .graph import Graph, ProjectionConfig

# Relative tolerance below which edge-length variance counts as exactly zero.
_REL_EPS = 1e-12


@dataclass(frozen=True)
class MetricsReport:
    m_elv: float
    m_mlo: float
    edge_count: int
    anchored_node_count: int

    def to_dict(self) -> dict:
        return {
            "m_elv": self.m_elv,
            "m_mlo": self.m_mlo,
            "edge_count": self.edge_count,
            "anchored_node_count": self.anchored_node_count,
        }


def edge_length_variation(graph: Graph, state: LayoutState) -> float:
    """M_ELV = l_v / sqrt(n_E - 1), l_v = sqrt(sum_e (l_e - l_mu)^2 / (n_E l_mu^2)).

    Edge lengths are full 3D distances. Requires at least two edges and a
    nonzero mean edge length.
    """
    edges = graph.edges
    n_e = len(edges)
    if n_e < 2:
        raise UndefinedMetricError(f"edge length variation needs >= 2 edges, got {n_e}")
    index = {node_id: i for i, node_id in enumerate(state.ids)}
    coords = state.coords
    lengths = []
    for edge in edges:
        d = coords[index[edge.source]] - coords[index[edge.target]]
        lengths.append(math.sqrt(float(d @ d)))
    l_mu = sum(lengths) / n_e
    if l_mu == 0.0:
        raise DegenerateLayoutError("all edge endpoints coincide; mean edge length is 0")
    variance = sum((l - l_mu) ** 2 for l in lengths) / (n_e * l_mu * l_mu)
    if variance < _REL_EPS * _REL_EPS:
        return 0.0
    return math.sqrt(variance) / math.sqrt(n_e - 1)


def mean_locational_offset(graph: Graph, state: LayoutState,
                           cfg: ProjectionConfig) -> float:
    """M_MLO = sum_v |C(v) - G(v)|_xy / (n_V * d_GC).

    The offset is the horizontal (map-plane) distance only; z never enters.
    n_V counts anchored nodes; d_GC, the pole-to-pole map distance, equals
    ``cfg.map_height``.
    """
    anchored_idx = [i for i in range(len(state.ids)) if state.anchored[i]]
    if not anchored_idx:
        raise UndefinedMetricError("mean locational offset needs at least one anchored node")
    d_gc = cfg.map_height
    total = 0.0
    for i in anchored_idx:
        dx = state.coords[i, 0] - state.anchor_coords[i, 0]
        dy = state.coords[i, 1] - state.anchor_coords[i, 1]
        total += math.sqrt(dx * dx + dy * dy)
    return total / (len(anchored_idx) * d_gc)


def compute_metrics(graph: Graph, state: LayoutState,
                    cfg: ProjectionConfig) -> MetricsReport:
    return MetricsReport(
        m_elv=edge_length_variation(graph, state),
        m_mlo=mean_locational_offset(graph, state, cfg),
        edge_count=len(graph.edges),
        anchored_node_count=int(state.anchored.sum()),
    )
