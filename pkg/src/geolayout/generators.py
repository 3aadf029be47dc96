"""Deterministic synthetic graph generators.

Three families:

* a geo-clustered semantic graph (three regional clusters with dense,
  strong intra-cluster links, sparse weak inter-cluster links, and a few
  geographic outliers), used for the geo-force trend experiments;
* "type1" density graphs whose edge count is a fraction p of a complete
  graph (round(p * n * (n-1) / 2) edges, quadratic in n);
* "type2" constant-average-degree graphs with round(c * n / 2) edges,
  linear in n.

All generators are pure functions of their spec (including the seed).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInputError, InvalidSpecError
from .graph import Edge, GeoCoordinate, Graph, Node

TYPE_I = "type1"
TYPE_II = "type2"


@dataclass(frozen=True)
class GeoRegion:
    """A lat/lon bounding box nodes of one cluster are scattered in."""

    lat_min: float
    lat_max: float
    lon_min: float
    lon_max: float
    name: str = ""

    def __post_init__(self):
        if not (-90 <= self.lat_min < self.lat_max <= 90):
            raise InvalidInputError(f"bad latitude range in region {self.name!r}")
        if not (-180 <= self.lon_min < self.lon_max <= 180):
            raise InvalidInputError(f"bad longitude range in region {self.name!r}")


# Rough continental boxes for the default three-cluster layout.
DEFAULT_REGIONS = (
    GeoRegion(28.0, 48.0, -122.0, -72.0, "us"),
    GeoRegion(38.0, 58.0, -8.0, 25.0, "europe"),
    GeoRegion(12.0, 45.0, 75.0, 135.0, "asia"),
)


@dataclass(frozen=True)
class ClusterSpec:
    cluster_count: int = 3
    nodes_per_cluster: int = 70
    geo_regions: tuple[GeoRegion, ...] = DEFAULT_REGIONS
    intra_edge_probability: float = 0.10
    inter_edge_probability: float = 0.005
    intra_weight_mean: float = 0.7
    intra_weight_sd: float = 0.1
    inter_weight_mean: float = 0.3
    inter_weight_sd: float = 0.1
    outlier_count: int = 6
    seed: int = 0

    def __post_init__(self):
        if self.cluster_count < 1 or self.nodes_per_cluster < 1:
            raise InvalidSpecError("cluster_count and nodes_per_cluster must be >= 1")
        if len(self.geo_regions) != self.cluster_count:
            raise InvalidSpecError(
                f"need {self.cluster_count} geo regions, got {len(self.geo_regions)}"
            )
        if not 0.0 < self.intra_edge_probability <= 1.0:
            raise InvalidSpecError("intra_edge_probability must lie in (0, 1]")
        if not 0.0 <= self.inter_edge_probability < 1.0:
            raise InvalidSpecError("inter_edge_probability must lie in [0, 1)")
        if self.intra_weight_mean <= self.inter_weight_mean:
            raise InvalidSpecError("intra_weight_mean must exceed inter_weight_mean")
        if self.outlier_count < 0:
            raise InvalidSpecError("outlier_count must be nonnegative")


@dataclass(frozen=True)
class DensityGraphSpec:
    n: int
    family: str
    p: float | None = None
    c: float | None = None
    seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise InvalidSpecError(f"node count must be >= 1, got {self.n}")
        if self.family == TYPE_I:
            if self.p is None or self.c is not None:
                raise InvalidSpecError("type1 graphs take p (and no c)")
            if not 0.0 < self.p <= 1.0:
                raise InvalidSpecError(f"p must lie in (0, 1], got {self.p}")
        elif self.family == TYPE_II:
            if self.c is None or self.p is not None:
                raise InvalidSpecError("type2 graphs take c (and no p)")
            if not 0.0 <= self.c <= self.n - 1:
                raise InvalidSpecError(f"c must lie in [0, n-1], got {self.c}")
        else:
            raise InvalidSpecError(f"unknown family {self.family!r}")

    def edge_count(self) -> int:
        """Target edge count; fractional results round half away from zero."""
        if self.family == TYPE_I:
            exact = self.p * self.n * (self.n - 1) / 2.0
        else:
            exact = self.c * self.n / 2.0
        return int(math.floor(exact + 0.5))


def _clamp_weights(raw: np.ndarray) -> np.ndarray:
    # Normal samples clamped into (0, 1]; the open lower bound uses a tiny
    # positive floor.
    return np.clip(raw, 1e-6, 1.0)


def _uniform_weight(rng: np.random.Generator, size: int) -> np.ndarray:
    # 1 - U[0,1) lies in (0, 1].
    return 1.0 - rng.random(size)


def gen_clustered(spec: ClusterSpec) -> Graph:
    """Generate the clustered semantic graph with geographic outliers.

    Outlier nodes keep their semantic edges but get a geolocation drawn
    from the NEXT cluster's region, so they "travel" once the geo-force
    is switched on.
    """
    rng = np.random.default_rng(spec.seed)
    total = spec.cluster_count * spec.nodes_per_cluster
    width = len(str(total - 1))

    cluster_of = np.repeat(np.arange(spec.cluster_count), spec.nodes_per_cluster)
    lats = np.empty(total)
    lons = np.empty(total)
    for i in range(total):
        region = spec.geo_regions[cluster_of[i]]
        lats[i] = rng.uniform(region.lat_min, region.lat_max)
        lons[i] = rng.uniform(region.lon_min, region.lon_max)

    edges = []
    for i in range(total):
        for j in range(i + 1, total):
            same = cluster_of[i] == cluster_of[j]
            prob = spec.intra_edge_probability if same else spec.inter_edge_probability
            if rng.random() < prob:
                if same:
                    w = rng.normal(spec.intra_weight_mean, spec.intra_weight_sd)
                else:
                    w = rng.normal(spec.inter_weight_mean, spec.inter_weight_sd)
                edges.append((i, j, float(_clamp_weights(np.array([w]))[0])))

    if spec.outlier_count > total:
        raise InvalidSpecError("outlier_count exceeds total node count")
    outliers = rng.choice(total, size=spec.outlier_count, replace=False) if spec.outlier_count else np.array([], dtype=int)
    for i in outliers:
        foreign = spec.geo_regions[(cluster_of[i] + 1) % spec.cluster_count]
        lats[i] = rng.uniform(foreign.lat_min, foreign.lat_max)
        lons[i] = rng.uniform(foreign.lon_min, foreign.lon_max)
    outlier_set = set(int(i) for i in outliers)

    nodes = []
    for i in range(total):
        region = spec.geo_regions[cluster_of[i]]
        cluster_name = region.name or f"cluster{cluster_of[i]}"
        nodes.append(Node(
            id=f"n{i:0{width}d}",
            label=f"{cluster_name} member {i}",
            geo=GeoCoordinate(float(lats[i]), float(lons[i])),
            attributes={
                "cluster": cluster_name,
                "outlier": "true" if i in outlier_set else "false",
            },
        ))
    edge_objs = [Edge(nodes[i].id, nodes[j].id, w) for i, j, w in edges]
    return Graph(nodes, edge_objs)


# (city, country, lat, lon) pool for the synthetic expert fixture.
_CITIES = (
    ("Phoenix", "USA", 33.45, -112.07), ("Boston", "USA", 42.36, -71.06),
    ("New York", "USA", 40.71, -74.01), ("Seattle", "USA", 47.61, -122.33),
    ("Atlanta", "USA", 33.75, -84.39), ("Mexico City", "Mexico", 19.43, -99.13),
    ("Sao Paulo", "Brazil", -23.55, -46.63), ("Buenos Aires", "Argentina", -34.60, -58.38),
    ("London", "UK", 51.51, -0.13), ("Paris", "France", 48.86, 2.35),
    ("Berlin", "Germany", 52.52, 13.41), ("Madrid", "Spain", 40.42, -3.70),
    ("Rome", "Italy", 41.90, 12.50), ("Stockholm", "Sweden", 59.33, 18.07),
    ("Oslo", "Norway", 59.91, 10.75), ("Geneva", "Switzerland", 46.20, 6.14),
    ("Cairo", "Egypt", 30.04, 31.24), ("Nairobi", "Kenya", -1.29, 36.82),
    ("Lagos", "Nigeria", 6.52, 3.38), ("Johannesburg", "South Africa", -26.20, 28.05),
    ("Mumbai", "India", 19.08, 72.88), ("New Delhi", "India", 28.61, 77.21),
    ("Bangkok", "Thailand", 13.76, 100.50), ("Singapore", "Singapore", 1.35, 103.82),
    ("Jakarta", "Indonesia", -6.21, 106.85), ("Manila", "Philippines", 14.60, 120.98),
    ("Tokyo", "Japan", 35.68, 139.69), ("Seoul", "South Korea", 37.57, 126.98),
    ("Beijing", "China", 39.90, 116.41), ("Shanghai", "China", 31.23, 121.47),
    ("Sydney", "Australia", -33.87, 151.21), ("Auckland", "New Zealand", -36.85, 174.76),
    ("Toronto", "Canada", 43.65, -79.38), ("Vancouver", "Canada", 49.28, -123.12),
    ("Lima", "Peru", -12.05, -77.04), ("Bogota", "Colombia", 4.71, -74.07),
    ("Istanbul", "Turkey", 41.01, 28.98), ("Tehran", "Iran", 35.69, 51.39),
    ("Dhaka", "Bangladesh", 23.81, 90.41), ("Hanoi", "Vietnam", 21.03, 105.85),
    ("Lisbon", "Portugal", 38.72, -9.14), ("Amsterdam", "Netherlands", 52.37, 4.90),
)

_INTERESTS = (
    "infectious disease epidemiology",
    "vaccine development",
    "public health logistics",
    "viral genomics",
)


def gen_expert_fixture(seed: int = 0, n_experts: int = 41) -> Graph:
    """Synthetic stand-in for a small worldwide expert network.

    Each expert carries a research interest, an affiliation city with its
    geolocation, and a profile URL; similarity edges in (0, 1] are denser
    and stronger between experts sharing an interest.
    """
    if n_experts < 2 or n_experts > len(_CITIES):
        raise InvalidSpecError(f"n_experts must lie in [2, {len(_CITIES)}]")
    rng = np.random.default_rng(seed)
    cities = rng.permutation(len(_CITIES))[:n_experts]
    interests = rng.integers(0, len(_INTERESTS), n_experts)

    nodes = []
    for i in range(n_experts):
        city, country, lat, lon = _CITIES[cities[i]]
        nodes.append(Node(
            id=f"expert{i:02d}",
            label=f"Expert {i:02d} ({city})",
            geo=GeoCoordinate(lat, lon),
            attributes={
                "interest": _INTERESTS[interests[i]],
                "affiliation": f"Institute of Health, {city}, {country}",
                "profile_url": f"https://example.org/experts/{i:02d}",
            },
        ))

    edges = []
    for i in range(n_experts):
        for j in range(i + 1, n_experts):
            same = interests[i] == interests[j]
            prob, mean = (0.5, 0.7) if same else (0.05, 0.3)
            if rng.random() < prob:
                w = float(_clamp_weights(np.array([rng.normal(mean, 0.1)]))[0])
                edges.append(Edge(nodes[i].id, nodes[j].id, w))
    return Graph(nodes, edges)


def gen_density_graph(spec: DensityGraphSpec) -> Graph:
    """Generate a type1/type2 density graph with the exact target edge count.

    Edges are sampled uniformly without replacement among all unordered
    pairs; weights are uniform in (0, 1]; geolocations are uniform over
    the globe.
    """
    n = spec.n
    n_pairs = n * (n - 1) // 2
    n_edges = spec.edge_count()
    if n_edges > n_pairs:
        raise InvalidSpecError(
            f"requested {n_edges} edges but only {n_pairs} unordered pairs exist"
        )
    rng = np.random.default_rng(spec.seed)
    width = len(str(n - 1))

    lats = rng.uniform(-90.0, 90.0, n)
    lons = rng.uniform(-180.0, 180.0, n)
    nodes = [
        Node(
            id=f"n{i:0{width}d}",
            label=f"node {i}",
            geo=GeoCoordinate(float(lats[i]), float(lons[i])),
        )
        for i in range(n)
    ]

    src_idx, dst_idx = np.triu_indices(n, k=1)
    chosen = rng.choice(n_pairs, size=n_edges, replace=False) if n_edges else np.array([], dtype=int)
    chosen.sort()
    weights = _uniform_weight(rng, n_edges)
    edges = [
        Edge(nodes[int(src_idx[m])].id, nodes[int(dst_idx[m])].id, float(weights[e]))
        for e, m in enumerate(chosen)
    ]
    return Graph(nodes, edges)
