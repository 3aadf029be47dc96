"""Geographically constrained 3D force-directed graph layout.

A layout engine blending semantic attraction/repulsion with a tunable
geo-force pulling nodes toward their map locations, plus layout-quality
metrics, synthetic graph generators, a timing harness, canonical file
formats, a CLI, and a streaming layout server.
"""

from .engine import (
    LayoutParams,
    LayoutState,
    Simulation,
    backend_name,
    simulate,
    step,
    update_geo_weight,
)
from .graph import (
    Edge,
    GeoCoordinate,
    Graph,
    Node,
    ProjectionConfig,
    VirtualPosition,
    filter_by_min_degree,
    node_degree,
    project_geo,
)
from .metrics import MetricsReport, compute_metrics, edge_length_variation, mean_locational_offset

__version__ = "0.1.0"
