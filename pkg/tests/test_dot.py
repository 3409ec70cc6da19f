from pathlib import Path

import pydot
import pytest

from arx.backends import parse_builtin
from arx.dot import ar_quiver_dot, ar_quiver_edges
from arx.errors import WrongBackend

GOLDEN = Path(__file__).parent / "golden" / "arquiver_linear3.dot"


def test_linear3_matches_golden(lin3):
    assert ar_quiver_dot(lin3) == GOLDEN.read_text()


def test_linear3_parses(lin3):
    (g,) = pydot.graph_from_dot_data(ar_quiver_dot(lin3))
    nodes = [n.get_name() for n in g.get_nodes() if n.get_name() not in ("node", "edge", "graph")]
    assert len(nodes) == 10
    edges = g.get_edges()
    dashed = [e for e in edges if e.get("style") == "dashed"]
    assert len(edges) == 18 and len(dashed) == 6


def test_edges_follow_intervals(lin8):
    def ends(name):
        return tuple(int(x) for x in name.split(":")[1:])

    solid, dashed = ar_quiver_edges(lin8)
    # irreducible maps shrink an interval at one end; tau shifts it by one
    assert len(solid) == 2 * 36 and len(dashed) == 36
    for (i, j), (k, l) in [(ends(a), ends(b)) for a, b in solid]:
        assert (k, l) in ((i - 1, j), (i, j - 1))
    for (i, j), (k, l) in [(ends(a), ends(b)) for a, b in dashed]:
        assert (k, l) == (i + 1, j + 1)


def test_single_node():
    g = ar_quiver_dot(parse_builtin("linear:0"))
    assert "X_0_0" in g and "->" not in g


def test_needs_linear(fi3):
    with pytest.raises(WrongBackend):
        ar_quiver_dot(fi3)
