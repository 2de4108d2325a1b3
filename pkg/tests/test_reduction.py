import itertools
import random

import pytest

from mrkit.characterize import fair_k_coloring, is_fair_coloring
from mrkit.errors import ParseError
from mrkit.graphs import Graph, complete_graph, cycle_graph, is_proper_coloring
from mrkit.reduction import (
    build_gadget,
    format_gadget,
    graph_k_colorable,
    lift_coloring,
    parse_names,
    project_coloring,
)
from mrkit.sweep import all_graphs


def brute_colorable(g, k):
    return any(
        is_proper_coloring(g, dict(enumerate(c, start=1)), k)
        for c in itertools.product(range(1, k + 1), repeat=g.n)
    )


def test_path3_gadget_shape(path3):
    gadget = build_gadget(path3)
    d = gadget.digraph
    assert (d.n, len(d.arcs)) == (10, 11)
    w12 = gadget.index_of(("clone", 1, 2))
    p2 = gadget.index_of(("p", 2))
    assert d.has_arc(w12, 1)
    assert d.has_arc(p2, 2) and d.has_arc(p2, w12)
    assert gadget.names[:3] == (("original", 1), ("original", 2), ("original", 3))
    assert gadget.names[-3:] == (("p", 1), ("p", 2), ("p", 3))


def test_path3_gadget_arcs_exact(path3):
    gadget = build_gadget(path3)
    name = dict(enumerate(gadget.names, start=1))
    arcs = {(name[u], name[v]) for u, v in gadget.digraph.arcs}
    expected = set()
    for i, j in [(1, 2), (2, 1), (1, 3), (3, 1)]:
        expected.add((("clone", i, j), ("original", i)))
        expected.add((("p", j), ("clone", i, j)))
    for i in (1, 2, 3):
        expected.add((("p", i), ("original", i)))
    assert arcs == expected


def test_gadget_rejects_small_k(path3):
    with pytest.raises(ValueError):
        build_gadget(path3, 2)


@pytest.mark.parametrize("k", [3, 4])
def test_lift_and_project(k):
    g = cycle_graph(5)
    coloring = graph_k_colorable(g, k)
    gadget = build_gadget(g, k)
    lifted = lift_coloring(gadget, coloring)
    assert is_fair_coloring(gadget.digraph, lifted, k)
    assert project_coloring(gadget, lifted) == coloring


def test_lift_and_project_validate(path3):
    gadget = build_gadget(path3)
    with pytest.raises(ValueError):
        lift_coloring(gadget, {1: 1, 2: 1, 3: 2})
    with pytest.raises(ValueError):
        project_coloring(gadget, {v: 1 for v in range(1, 11)})


def test_k4_gadget_not_fairly_3_colorable():
    gadget = build_gadget(complete_graph(4), 3)
    assert fair_k_coloring(gadget.digraph, 3) is None
    assert fair_k_coloring(build_gadget(complete_graph(4), 4).digraph, 4) is not None


def test_graph_k_colorable_matches_brute_force():
    for n in range(1, 6):
        for g in all_graphs(n):
            for k in (2, 3):
                c = graph_k_colorable(g, k)
                assert (c is not None) == brute_colorable(g, k)
                if c is not None:
                    assert is_proper_coloring(g, c, k)


def test_gadget_sizes_random():
    rng = random.Random(77)
    for _ in range(50):
        n = rng.randint(1, 12)
        g = Graph(n, [e for e in itertools.combinations(range(1, n + 1), 2) if rng.random() < 0.3])
        d = build_gadget(g).digraph
        assert d.n == 2 * n + 2 * len(g.edges)
        assert len(d.arcs) == n + 4 * len(g.edges)


def test_names_roundtrip(path3):
    gadget = build_gadget(path3)
    edges, names = format_gadget(gadget)
    assert edges.splitlines()[0] == "digraph 10"
    assert names.splitlines()[:4] == ["1 original 1", "2 original 2", "3 original 3", "4 clone 1 2"]
    assert parse_names(names) == gadget.names


@pytest.mark.parametrize("text", ["1 original\n", "1 ghost 1\n", "2 original 1\n", "x original 1\n"])
def test_names_parse_errors(text):
    with pytest.raises(ParseError):
        parse_names(text)
