"""Canonical JSON file formats for graphs, layouts, and metric reports.

Two document kinds, both UTF-8 JSON with a ``format_version`` field
(current version "1.0"; loaders accept any 1.x):

* graph documents: ``{"format_version", "nodes": [...], "edges": [...]}``
* layout documents: ``{"format_version", "params", "temperature",
  "iteration", "positions": [...], "metrics"?}``

Serialization is canonical: fixed key order, two-space indent, floats via
Python repr (shortest string that round-trips the exact double), so
save(load(x)) is byte-stable. Full field reference in docs/formats.md.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .engine.params import LayoutParams
from .engine.state import LayoutState
from .errors import FormatError, GraphInvariantError, InvalidInputError, UnsupportedVersionError
from .graph import Edge, GeoCoordinate, Graph, Node, ProjectionConfig, project_geo
from .metrics import MetricsReport

FORMAT_VERSION = "1.0"

_NODE_FIELDS = {"id", "label", "lat", "lon", "attributes"}
_EDGE_FIELDS = {"source", "target", "weight"}


@dataclass
class GraphDocument:
    """A parsed graph document; ``extras`` holds unknown fields kept in
    lenient mode (top-level, per-node by id, per-edge by pair)."""

    graph: Graph
    extras: dict = field(default_factory=dict)


def _parse_json(data) -> dict:
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise FormatError("top-level value must be an object")
    return doc


def _check_version(doc: dict) -> None:
    version = doc.get("format_version")
    if not isinstance(version, str):
        raise FormatError("missing or non-string format_version")
    major = version.split(".", 1)[0]
    if major != FORMAT_VERSION.split(".", 1)[0]:
        raise UnsupportedVersionError(
            f"format_version {version!r} is not supported (this build reads 1.x)"
        )


def _require(obj: dict, key: str, where: str):
    if key not in obj:
        raise FormatError(f"{where}: missing required field {key!r}")
    return obj[key]


def _number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise FormatError(f"{where}: expected a number, got {value!r}")
    return float(value)


def load_graph_document(data, strict: bool = True) -> GraphDocument:
    """Parse and validate a graph document.

    Strict mode rejects unknown fields; lenient mode preserves them in
    the returned document's ``extras`` so a rewrite does not drop them.
    No partially valid graph ever escapes: any violation raises.
    """
    doc = _parse_json(data)
    _check_version(doc)
    extras: dict = {"document": {}, "nodes": {}, "edges": {}}

    known_top = {"format_version", "nodes", "edges"}
    for key in doc:
        if key not in known_top:
            if strict:
                raise FormatError(f"unknown top-level field {key!r}")
            extras["document"][key] = doc[key]

    raw_nodes = _require(doc, "nodes", "document")
    raw_edges = _require(doc, "edges", "document")
    if not isinstance(raw_nodes, list) or not isinstance(raw_edges, list):
        raise FormatError("nodes and edges must be arrays")

    nodes = []
    for i, raw in enumerate(raw_nodes):
        where = f"nodes[{i}]"
        if not isinstance(raw, dict):
            raise FormatError(f"{where}: expected an object")
        node_id = _require(raw, "id", where)
        if not isinstance(node_id, str) or not node_id:
            raise FormatError(f"{where}: id must be a non-empty string")
        label = raw.get("label", "")
        if not isinstance(label, str):
            raise FormatError(f"{where}.label: expected a string")
        geo = None
        if ("lat" in raw) != ("lon" in raw):
            raise FormatError(f"{where}: lat and lon must be given together")
        if "lat" in raw:
            try:
                geo = GeoCoordinate(_number(raw["lat"], f"{where}.lat"),
                                    _number(raw["lon"], f"{where}.lon"))
            except InvalidInputError as exc:
                raise FormatError(f"{where}: {exc}") from exc
        attributes = raw.get("attributes", {})
        if not isinstance(attributes, dict) or not all(
            isinstance(k, str) and isinstance(v, str) for k, v in attributes.items()
        ):
            raise FormatError(f"{where}.attributes: expected a string-to-string map")
        unknown = set(raw) - _NODE_FIELDS
        if unknown:
            if strict:
                raise FormatError(f"{where}: unknown fields {sorted(unknown)}")
            extras["nodes"][node_id] = {k: raw[k] for k in sorted(unknown)}
        nodes.append(Node(id=node_id, label=label, geo=geo, attributes=dict(attributes)))

    edges = []
    for i, raw in enumerate(raw_edges):
        where = f"edges[{i}]"
        if not isinstance(raw, dict):
            raise FormatError(f"{where}: expected an object")
        source = _require(raw, "source", where)
        target = _require(raw, "target", where)
        weight = _number(_require(raw, "weight", where), f"{where}.weight")
        if not isinstance(source, str) or not isinstance(target, str):
            raise FormatError(f"{where}: source and target must be strings")
        unknown = set(raw) - _EDGE_FIELDS
        if unknown:
            if strict:
                raise FormatError(f"{where}: unknown fields {sorted(unknown)}")
            extras["edges"][f"{min(source, target)}|{max(source, target)}"] = {
                k: raw[k] for k in sorted(unknown)
            }
        try:
            edges.append(Edge(source, target, weight))
        except GraphInvariantError as exc:
            raise FormatError(f"{where}: {exc}") from exc

    try:
        graph = Graph(nodes, edges)
    except GraphInvariantError as exc:
        raise FormatError(str(exc)) from exc
    return GraphDocument(graph=graph, extras=extras)


def load_graph(data, strict: bool = True) -> Graph:
    return load_graph_document(data, strict=strict).graph


def _dump(document: dict) -> bytes:
    return (json.dumps(document, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def save_graph(graph: Graph, extras: dict | None = None) -> bytes:
    """Serialize canonically: nodes and edges in canonical order, fixed key
    order, repr floats."""
    extras = extras or {}
    doc_nodes = []
    for node in graph.nodes:
        entry: dict = {"id": node.id, "label": node.label}
        if node.geo is not None:
            entry["lat"] = node.geo.latitude
            entry["lon"] = node.geo.longitude
        if node.attributes:
            entry["attributes"] = {k: node.attributes[k] for k in sorted(node.attributes)}
        entry.update(extras.get("nodes", {}).get(node.id, {}))
        doc_nodes.append(entry)
    doc_edges = []
    for edge in graph.edges:
        entry = {"source": edge.source, "target": edge.target, "weight": edge.weight}
        entry.update(extras.get("edges", {}).get(f"{edge.source}|{edge.target}", {}))
        doc_edges.append(entry)
    document = {"format_version": FORMAT_VERSION}
    document.update(extras.get("document", {}))
    document["nodes"] = doc_nodes
    document["edges"] = doc_edges
    return _dump(document)


def params_to_dict(params: LayoutParams) -> dict:
    return {
        "k": params.k,
        "geo_weight": params.geo_weight,
        "initial_temperature": params.initial_temperature,
        "cooling_alpha": params.cooling_alpha,
        "n_iterations": params.n_iterations,
        "seed": params.seed,
        "projection": {
            "map_width": params.projection.map_width,
            "map_height": params.projection.map_height,
            "anchor_height": params.projection.anchor_height,
        },
        "weighted_attraction": params.weighted_attraction,
        "init_at_anchors": params.init_at_anchors,
    }


def params_from_dict(raw: dict, where: str = "params") -> LayoutParams:
    if not isinstance(raw, dict):
        raise FormatError(f"{where}: expected an object")
    proj_raw = raw.get("projection", {})
    if not isinstance(proj_raw, dict):
        raise FormatError(f"{where}.projection: expected an object")
    try:
        projection = ProjectionConfig(
            map_width=_number(proj_raw.get("map_width", 360.0), f"{where}.projection.map_width"),
            map_height=_number(proj_raw.get("map_height", 180.0), f"{where}.projection.map_height"),
            anchor_height=_number(proj_raw.get("anchor_height", 30.0), f"{where}.projection.anchor_height"),
        )
        return LayoutParams(
            k=None if raw.get("k") is None else _number(raw["k"], f"{where}.k"),
            geo_weight=_number(raw.get("geo_weight", 5.0), f"{where}.geo_weight"),
            initial_temperature=(
                None if raw.get("initial_temperature") is None
                else _number(raw["initial_temperature"], f"{where}.initial_temperature")
            ),
            cooling_alpha=_number(raw.get("cooling_alpha", 0.02), f"{where}.cooling_alpha"),
            n_iterations=int(raw.get("n_iterations", 300)),
            seed=int(raw.get("seed", 0)),
            projection=projection,
            weighted_attraction=bool(raw.get("weighted_attraction", False)),
            init_at_anchors=bool(raw.get("init_at_anchors", False)),
        )
    except InvalidInputError as exc:
        raise FormatError(f"{where}: {exc}") from exc


def save_layout(state: LayoutState, params: LayoutParams,
                metrics: MetricsReport | None = None) -> bytes:
    document = {
        "format_version": FORMAT_VERSION,
        "params": params_to_dict(params),
        "temperature": float(state.temperature),
        "iteration": int(state.iteration),
        "positions": [
            {
                "id": node_id,
                "x": float(state.coords[i, 0]),
                "y": float(state.coords[i, 1]),
                "z": float(state.coords[i, 2]),
            }
            for i, node_id in enumerate(state.ids)
        ],
    }
    if metrics is not None:
        document["metrics"] = metrics.to_dict()
    return _dump(document)


def load_layout(data) -> tuple[LayoutState, LayoutParams, MetricsReport | None]:
    """Load a layout document.

    The returned state has no geo anchors attached (the document carries
    positions only); use :func:`state_for_graph` to rebind it to a graph
    before computing anchored metrics.
    """
    doc = _parse_json(data)
    _check_version(doc)
    params = params_from_dict(_require(doc, "params", "document"))
    raw_positions = _require(doc, "positions", "document")
    if not isinstance(raw_positions, list):
        raise FormatError("positions must be an array")
    entries = []
    for i, raw in enumerate(raw_positions):
        where = f"positions[{i}]"
        if not isinstance(raw, dict):
            raise FormatError(f"{where}: expected an object")
        node_id = _require(raw, "id", where)
        entries.append((
            node_id,
            _number(_require(raw, "x", where), f"{where}.x"),
            _number(_require(raw, "y", where), f"{where}.y"),
            _number(_require(raw, "z", where), f"{where}.z"),
        ))
    if len({e[0] for e in entries}) != len(entries):
        raise FormatError("positions contain duplicate node ids")
    entries.sort(key=lambda e: e[0])
    ids = tuple(e[0] for e in entries)
    coords = np.array([[e[1], e[2], e[3]] for e in entries], dtype=np.float64).reshape(len(entries), 3)
    state = LayoutState(
        ids=ids,
        coords=coords,
        temperature=_number(doc.get("temperature", 0.0), "temperature"),
        iteration=int(doc.get("iteration", 0)),
        anchor_coords=np.zeros_like(coords),
        anchored=np.zeros(len(ids), dtype=bool),
    )
    metrics = None
    if "metrics" in doc:
        raw_metrics = doc["metrics"]
        if not isinstance(raw_metrics, dict):
            raise FormatError("metrics: expected an object")
        metrics = MetricsReport(
            m_elv=_number(_require(raw_metrics, "m_elv", "metrics"), "metrics.m_elv"),
            m_mlo=_number(_require(raw_metrics, "m_mlo", "metrics"), "metrics.m_mlo"),
            edge_count=int(raw_metrics.get("edge_count", 0)),
            anchored_node_count=int(raw_metrics.get("anchored_node_count", 0)),
        )
    return state, params, metrics


def state_for_graph(state: LayoutState, graph: Graph,
                    cfg: ProjectionConfig) -> LayoutState:
    """Rebind a loaded (anchor-less) state to a graph: verify the id sets
    match and recompute the projected geo anchors."""
    if state.ids != graph.node_ids:
        raise FormatError("layout positions do not cover exactly the graph's node ids")
    anchor_coords = np.zeros_like(state.coords)
    anchored = np.zeros(len(state.ids), dtype=bool)
    for i, node_id in enumerate(state.ids):
        geo = graph.node(node_id).geo
        if geo is not None:
            pos = project_geo(geo, cfg)
            anchor_coords[i] = (pos.x, pos.y, pos.z)
            anchored[i] = True
    return LayoutState(
        ids=state.ids,
        coords=state.coords,
        temperature=state.temperature,
        iteration=state.iteration,
        anchor_coords=anchor_coords,
        anchored=anchored,
    )
