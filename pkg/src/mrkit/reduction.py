"""Reduction from graph k-coloring to fair k-coloring of a digraph.

For each vertex i of G the gadget holds i itself plus a clone w(i, j) for
every neighbor j, with arcs w(i, j) -> i. A fresh vertex p_i points at i
and at every clone of i, so a fair coloring must give all clones of i the
color of i.

Vertex numbering: originals 1..n, then clones sorted by (i, j), then
p_1..p_n.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .characterize import is_fair_coloring
from .errors import ParseError
from .graphs import Digraph, Graph, format_graph, is_proper_coloring


@dataclass(frozen=True)
class Gadget:
    digraph: Digraph
    names: tuple  # names[v - 1] is ("original", i) | ("clone", i, j) | ("p", i)
    source: Graph
    k: int

    def index_of(self, name) -> int:
        return self.names.index(tuple(name)) + 1


def build_gadget(g: Graph, k: int = 3) -> Gadget:
    if k < 3:
        raise ValueError(f"the reduction is stated for k >= 3, got k={k}")
    n = g.n
    names = [("original", i) for i in range(1, n + 1)]
    clone_of = {}
    for i in range(1, n + 1):
        for j in g.neighbors(i):
            clone_of[(i, j)] = len(names) + 1
            names.append(("clone", i, j))
    p = {}
    for i in range(1, n + 1):
        p[i] = len(names) + 1
        names.append(("p", i))

    arcs = [(w, i) for (i, _), w in clone_of.items()]
    for i in range(1, n + 1):
        arcs.append((p[i], i))
        arcs.extend((p[i], w) for (owner, j), w in clone_of.items() if j == i)
    d = Digraph(len(names), arcs)

    e = len(g.edges)
    if d.n != 2 * n + 2 * e or len(d.arcs) != n + 4 * e:
        raise AssertionError(f"gadget has {d.n} vertices / {len(d.arcs)} arcs for |V|={n}, |E|={e}")
    return Gadget(d, tuple(names), g, k)


def lift_coloring(gadget: Gadget, coloring) -> dict[int, int]:
    """Fair coloring of the gadget from a proper coloring of the source:
    clones copy the color of the vertex they stand for, and p_i takes the
    smallest color different from that of i."""
    g, k = gadget.source, gadget.k
    if not is_proper_coloring(g, coloring, k):
        raise ValueError("input is not a proper k-coloring of the source graph")
    out = {}
    for v, name in enumerate(gadget.names, start=1):
        kind = name[0]
        if kind == "original":
            out[v] = coloring[name[1]]
        elif kind == "clone":
            out[v] = coloring[name[2]]
        else:
            out[v] = 1 if coloring[name[1]] != 1 else 2
    return out


def project_coloring(gadget: Gadget, coloring) -> dict[int, int]:
    """Restrict a fair k-coloring of the gadget to the original vertices."""
    if not is_fair_coloring(gadget.digraph, coloring, gadget.k):
        raise ValueError("input is not a fair k-coloring of the gadget")
    projected = {i: coloring[i] for i in range(1, gadget.source.n + 1)}
    if not is_proper_coloring(gadget.source, projected, gadget.k):
        raise AssertionError("projection of a fair coloring must be proper")
    return projected


def graph_k_colorable(g: Graph, k: int) -> Optional[dict[int, int]]:
    """Exact backtracking k-coloring, vertices and colors ascending."""
    n = g.n
    color = [0] * (n + 1)
    nbrs = [[]] + [g.neighbors(v) for v in range(1, n + 1)]

    def place(v):
        if v > n:
            return True
        for c in range(1, k + 1):
            if all(color[w] != c for w in nbrs[v]):
                color[v] = c
                if place(v + 1):
                    return True
        color[v] = 0
        return False

    if k >= 1 and place(1):
        return {v: color[v] for v in range(1, n + 1)}
    return None


def format_names(gadget: Gadget) -> str:
    lines = []
    for v, name in enumerate(gadget.names, start=1):
        lines.append(f"{v} " + " ".join(str(x) for x in name))
    return "\n".join(lines) + "\n"


def parse_names(text: str) -> tuple:
    names = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        try:
            index = int(fields[0])
            kind = fields[1]
            args = tuple(int(x) for x in fields[2:])
        except (IndexError, ValueError):
            raise ParseError(f"malformed name-map line {line!r}", lineno) from None
        expected = {"original": 1, "clone": 2, "p": 1}
        if kind not in expected or len(args) != expected[kind]:
            raise ParseError(f"unknown vertex tag in {line!r}", lineno)
        if index != len(names) + 1:
            raise ParseError(f"expected index {len(names) + 1}, got {index}", lineno)
        names.append((kind,) + args)
    return tuple(names)


def format_gadget(gadget: Gadget) -> tuple[str, str]:
    """(edge-list text, name-map text)."""
    return format_graph(gadget.digraph), format_names(gadget)
