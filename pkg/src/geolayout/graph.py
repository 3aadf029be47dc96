"""Graph data model and geographic projection into the virtual viewport space.

Nodes carry an optional point geolocation plus a free-form attribute bag.
Edges are undirected, stored once per unordered pair with the canonical
(min id, max id) orientation, and weighted in (0, 1].

The map plane is x-y (x spans longitude, y spans latitude); z is height
above the map. The projection is equirectangular so that the poles are
visible and the pole-to-pole distance equals ``map_height``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import GraphInvariantError, InvalidInputError, NotFoundError


@dataclass(frozen=True)
class GeoCoordinate:
    """A point location in degrees: latitude in [-90, 90], longitude in [-180, 180]."""

    latitude: float
    longitude: float

    def __post_init__(self):
        if not (math.isfinite(self.latitude) and -90.0 <= self.latitude <= 90.0):
            raise InvalidInputError(f"latitude out of range [-90, 90]: {self.latitude}")
        if not (math.isfinite(self.longitude) and -180.0 <= self.longitude <= 180.0):
            raise InvalidInputError(f"longitude out of range [-180, 180]: {self.longitude}")


@dataclass(frozen=True)
class VirtualPosition:
    """A point in the virtual 3D viewport (dimensionless units)."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        for name in ("x", "y", "z"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidInputError(f"non-finite position component {name}")

    def distance_to(self, other: "VirtualPosition") -> float:
        return math.sqrt(
            (self.x - other.x) ** 2 + (self.y - other.y) ** 2 + (self.z - other.z) ** 2
        )


@dataclass(frozen=True)
class Node:
    """A graph node: unique id, display label, optional geolocation, attributes."""

    id: str
    label: str = ""
    geo: GeoCoordinate | None = None
    attributes: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.id:
            raise InvalidInputError("node id must be a non-empty string")


@dataclass(frozen=True)
class Edge:
    """An undirected weighted edge; weight must lie in (0, 1]."""

    source: str
    target: str
    weight: float

    def __post_init__(self):
        if self.source == self.target:
            raise GraphInvariantError(f"self-loop on node {self.source!r}")
        if not (0.0 < self.weight <= 1.0) or not math.isfinite(self.weight):
            raise GraphInvariantError(
                f"edge {self.source!r}-{self.target!r} weight {self.weight} outside (0, 1]"
            )

    def canonical(self) -> "Edge":
        """Return the edge with endpoints in (min id, max id) order."""
        if self.source <= self.target:
            return self
        return Edge(self.target, self.source, self.weight)

    @property
    def pair(self) -> tuple[str, str]:
        return (self.source, self.target) if self.source <= self.target else (self.target, self.source)


class Graph:
    """An immutable undirected graph with referential-integrity checks.

    Nodes are kept in a dict keyed by id; edges are stored once per
    unordered pair in canonical orientation, sorted for deterministic
    iteration order.
    """

    def __init__(self, nodes, edges):
        node_map: dict[str, Node] = {}
        for node in nodes:
            if node.id in node_map:
                raise GraphInvariantError(f"duplicate node id {node.id!r}")
            node_map[node.id] = node

        edge_map: dict[tuple[str, str], Edge] = {}
        for edge in edges:
            for endpoint in (edge.source, edge.target):
                if endpoint not in node_map:
                    raise GraphInvariantError(
                        f"edge {edge.source!r}-{edge.target!r} references unknown node {endpoint!r}"
                    )
            canon = edge.canonical()
            if canon.pair in edge_map:
                raise GraphInvariantError(
                    f"duplicate edge for pair {canon.pair[0]!r}-{canon.pair[1]!r}"
                )
            edge_map[canon.pair] = canon

        self._nodes = node_map
        self._edges = tuple(edge_map[pair] for pair in sorted(edge_map))
        self._degrees: dict[str, int] | None = None

    @property
    def nodes(self) -> tuple[Node, ...]:
        """Nodes in canonical (id-sorted) order."""
        return tuple(self._nodes[i] for i in sorted(self._nodes))

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    @property
    def node_ids(self) -> tuple[str, ...]:
        return tuple(sorted(self._nodes))

    def __contains__(self, node_id: str) -> bool:
        return node_id in self._nodes

    def __len__(self) -> int:
        return len(self._nodes)

    def node(self, node_id: str) -> Node:
        try:
            return self._nodes[node_id]
        except KeyError:
            raise NotFoundError(f"unknown node id {node_id!r}") from None

    def _degree_table(self) -> dict[str, int]:
        if self._degrees is None:
            degrees = {node_id: 0 for node_id in self._nodes}
            for edge in self._edges:
                degrees[edge.source] += 1
                degrees[edge.target] += 1
            self._degrees = degrees
        return self._degrees

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._nodes == other._nodes and self._edges == other._edges

    def __repr__(self) -> str:
        return f"Graph(nodes={len(self._nodes)}, edges={len(self._edges)})"


@dataclass(frozen=True)
class ProjectionConfig:
    """Viewport extents of the equirectangular map.

    ``map_width`` spans longitude [-180, 180], ``map_height`` spans latitude
    [-90, 90]; the pole-to-pole distance on the map equals ``map_height``.
    ``anchor_height`` is the z coordinate geo anchors float at above the map.
    """

    map_width: float = 360.0
    map_height: float = 180.0
    anchor_height: float = 30.0

    def __post_init__(self):
        if self.map_width <= 0 or self.map_height <= 0:
            raise InvalidInputError("map extents must be positive")
        if self.anchor_height < 0:
            raise InvalidInputError("anchor_height must be >= 0")


def project_geo(geo: GeoCoordinate, cfg: ProjectionConfig) -> VirtualPosition:
    """Project a geographic coordinate onto the virtual map plane.

    Equirectangular (plate carree): linear in both angles, (0, 0) maps to
    the viewport origin, and z is the fixed anchor height.
    """
    return VirtualPosition(
        x=geo.longitude / 360.0 * cfg.map_width,
        y=geo.latitude / 180.0 * cfg.map_height,
        z=cfg.anchor_height,
    )


def node_degree(graph: Graph, node_id: str) -> int:
    """Number of edges incident to ``node_id``."""
    if node_id not in graph:
        raise NotFoundError(f"unknown node id {node_id!r}")
    return graph._degree_table()[node_id]


def filter_by_min_degree(graph: Graph, d_min: int) -> Graph:
    """Induced subgraph on nodes whose degree in the ORIGINAL graph is >= d_min.

    Degrees are measured once on the input graph, not recomputed iteratively;
    an edge survives iff both endpoints survive.
    """
    if d_min < 0:
        raise InvalidInputError(f"d_min must be nonnegative, got {d_min}")
    degrees = graph._degree_table()
    keep = {node_id for node_id, d in degrees.items() if d >= d_min}
    nodes = [n for n in graph.nodes if n.id in keep]
    edges = [e for e in graph.edges if e.source in keep and e.target in keep]
    return Graph(nodes, edges)
