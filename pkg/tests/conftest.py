import pytest

from geolayout.graph import Edge, GeoCoordinate, Graph, Node


@pytest.fixture
def triangle_graph():
    nodes = [Node("a"), Node("b"), Node("c")]
    edges = [Edge("a", "b", 0.5), Edge("b", "c", 0.5), Edge("a", "c", 0.5)]
    return Graph(nodes, edges)


@pytest.fixture
def star_graph():
    """Hub 'hub' connected to 3 leaves."""
    nodes = [Node("hub"), Node("l1"), Node("l2"), Node("l3")]
    edges = [Edge("hub", leaf, 0.8) for leaf in ("l1", "l2", "l3")]
    return Graph(nodes, edges)


@pytest.fixture
def complete5_graph():
    ids = ["v1", "v2", "v3", "v4", "v5"]
    nodes = [Node(i) for i in ids]
    edges = [Edge(a, b, 0.9) for i, a in enumerate(ids) for b in ids[i + 1:]]
    return Graph(nodes, edges)


@pytest.fixture
def geo_pair_graph():
    nodes = [
        Node("amsterdam", geo=GeoCoordinate(52.37, 4.90)),
        Node("sydney", geo=GeoCoordinate(-33.87, 151.21)),
        Node("nowhere"),
    ]
    return Graph(nodes, [Edge("amsterdam", "sydney", 0.4)])
