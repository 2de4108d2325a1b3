"""Graphs and digraphs on the vertex set 1..n, with the structural tools the
min-rank characterizations need.

All I/O is 1-indexed. Internally the hot paths work on 0-indexed bitmasks
(``out_masks`` / ``adj_masks``), where bit ``j`` stands for vertex ``j + 1``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional, Union

from .errors import CapExceeded, ParseError

DEFAULT_MAIS_CAP = 20
MATCHING_CAP = 64


@dataclass(frozen=True)
class Digraph:
    n: int
    arcs: frozenset

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]] = ()):
        arcs = frozenset((int(u), int(v)) for u, v in arcs)
        if n < 1:
            raise ValueError(f"vertex count must be positive, got {n}")
        for u, v in arcs:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (1 <= u <= n and 1 <= v <= n):
                raise ValueError(f"arc ({u}, {v}) has an endpoint outside 1..{n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "arcs", arcs)

    @cached_property
    def out_masks(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for u, v in self.arcs:
            masks[u - 1] |= 1 << (v - 1)
        return tuple(masks)

    @cached_property
    def in_masks(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for u, v in self.arcs:
            masks[v - 1] |= 1 << (u - 1)
        return tuple(masks)

    def out_neighbors(self, v: int) -> list[int]:
        """Sorted out-neighbors of ``v``."""
        return _bits_to_vertices(self.out_masks[v - 1])

    def in_neighbors(self, v: int) -> list[int]:
        return _bits_to_vertices(self.in_masks[v - 1])

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def sorted_arcs(self) -> list[tuple[int, int]]:
        return sorted(self.arcs)

    def __repr__(self):
        return f"Digraph(n={self.n}, arcs={self.sorted_arcs()})"


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        normalized = set()
        if n < 1:
            raise ValueError(f"vertex count must be positive, got {n}")
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (1 <= u <= n and 1 <= v <= n):
                raise ValueError(f"edge {{{u}, {v}}} has an endpoint outside 1..{n}")
            normalized.add((min(u, v), max(u, v)))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(normalized))

    @cached_property
    def adj_masks(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u - 1] |= 1 << (v - 1)
            masks[v - 1] |= 1 << (u - 1)
        return tuple(masks)

    def neighbors(self, v: int) -> list[int]:
        return _bits_to_vertices(self.adj_masks[v - 1])

    def degree(self, v: int) -> int:
        return bin(self.adj_masks[v - 1]).count("1")

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.sorted_edges()})"


GraphLike = Union[Digraph, Graph]


def _bits_to_vertices(mask: int) -> list[int]:
    out = []
    j = 0
    while mask:
        if mask & 1:
            out.append(j + 1)
        mask >>= 1
        j += 1
    return out


# --------------------------------------------------------------------------
# text format


def parse_graph_file(text: str) -> GraphLike:
    """Parse the edge-list format.

    Line 1 is ``digraph <n>`` or ``graph <n>``; every later non-empty line
    that does not start with ``#`` is ``<u> <v>``.
    """
    header = None
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if header is None:
            if len(fields) != 2 or fields[0] not in ("digraph", "graph"):
                raise ParseError("expected header 'digraph <n>' or 'graph <n>'", lineno)
            try:
                n = int(fields[1])
            except ValueError:
                raise ParseError(f"vertex count {fields[1]!r} is not an integer", lineno) from None
            if n < 1:
                raise ParseError(f"vertex count must be positive, got {n}", lineno)
            header = (fields[0], n)
            continue
        if len(fields) != 2:
            raise ParseError(f"expected two vertex labels, got {line!r}", lineno)
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError(f"non-integer vertex label in {line!r}", lineno) from None
        n = header[1]
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(f"vertex label out of range 1..{n} in {line!r}", lineno)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", lineno)
        pairs.append((lineno, u, v))
    if header is None:
        raise ParseError("missing header line")
    kind, n = header
    if kind == "digraph":
        return Digraph(n, [(u, v) for _, u, v in pairs])
    seen = {}
    for lineno, u, v in pairs:
        if (v, u) in seen and (u, v) not in seen:
            raise ParseError(
                f"edge {{{u}, {v}}} also listed as '{v} {u}' on line {seen[(v, u)]}", lineno
            )
        seen.setdefault((u, v), lineno)
    return Graph(n, [(u, v) for _, u, v in pairs])


def format_graph(g: GraphLike) -> str:
    if isinstance(g, Digraph):
        lines = [f"digraph {g.n}"] + [f"{u} {v}" for u, v in g.sorted_arcs()]
    else:
        lines = [f"graph {g.n}"] + [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# conversions


def as_digraph(g: GraphLike) -> Digraph:
    """Replace each edge by two antiparallel arcs. Digraphs pass through."""
    if isinstance(g, Digraph):
        return g
    arcs = []
    for u, v in g.edges:
        arcs.append((u, v))
        arcs.append((v, u))
    return Digraph(g.n, arcs)


def complement(d: GraphLike) -> GraphLike:
    """Complement of a digraph (or of a graph, returning a graph)."""
    n = d.n
    if isinstance(d, Graph):
        return Graph(n, [(u, v) for u, v in combinations(range(1, n + 1), 2) if (u, v) not in d.edges])
    return Digraph(
        n,
        [(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v and (u, v) not in d.arcs],
    )


def complete_digraph(n: int) -> Digraph:
    return Digraph(n, [(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v])


def complete_graph(n: int) -> Graph:
    return Graph(n, combinations(range(1, n + 1), 2))


def star_graph(n: int, center: int = 1) -> Graph:
    return Graph(n, [(center, v) for v in range(1, n + 1) if v != center])


def path_graph(n: int) -> Graph:
    return Graph(n, [(v, v + 1) for v in range(1, n)])


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(v, v % n + 1) for v in range(1, n + 1)])


def directed_cycle(n: int) -> Digraph:
    return Digraph(n, [(v, v % n + 1) for v in range(1, n + 1)])


# --------------------------------------------------------------------------
# predicates


def is_complete(d: GraphLike) -> bool:
    if isinstance(d, Graph):
        return len(d.edges) == d.n * (d.n - 1) // 2
    return len(d.arcs) == d.n * (d.n - 1)


def _acyclic_mask(out_masks, mask: int) -> bool:
    """True iff the subgraph induced by ``mask`` has no circuit.

    Peels off vertices with no out-neighbor inside the remaining set.
    """
    remaining = mask
    while remaining:
        peeled = 0
        rest = remaining
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            if not (out_masks[v] & remaining):
                peeled |= low
            rest ^= low
        if not peeled:
            return False
        remaining &= ~peeled
    return True


def is_acyclic(d: GraphLike) -> bool:
    d = as_digraph(d)
    return _acyclic_mask(d.out_masks, (1 << d.n) - 1)


def find_circuit(d: GraphLike) -> Optional[tuple[int, ...]]:
    """Return a circuit ``(i_1, ..., i_r)`` if one exists, else ``None``.

    Depth-first search from the lowest vertex, neighbors in ascending order.
    """
    d = as_digraph(d)
    state = [0] * (d.n + 1)  # 0 new, 1 on stack, 2 done
    stack_pos: dict[int, int] = {}
    path: list[int] = []

    for root in range(1, d.n + 1):
        if state[root]:
            continue
        # iterative DFS: frames are (vertex, iterator over out-neighbors)
        frames = [(root, iter(d.out_neighbors(root)))]
        state[root] = 1
        stack_pos[root] = 0
        path.append(root)
        while frames:
            v, it = frames[-1]
            advanced = False
            for w in it:
                if state[w] == 1:
                    return tuple(path[stack_pos[w]:])
                if state[w] == 0:
                    state[w] = 1
                    stack_pos[w] = len(path)
                    path.append(w)
                    frames.append((w, iter(d.out_neighbors(w))))
                    advanced = True
                    break
            if not advanced:
                frames.pop()
                state[v] = 2
                path.pop()
                del stack_pos[v]
    return None


def is_circuit(d: Digraph, circuit) -> bool:
    c = tuple(circuit)
    if len(c) < 2 or len(set(c)) != len(c):
        return False
    if any(not (1 <= v <= d.n) for v in c):
        return False
    return all((c[s], c[(s + 1) % len(c)]) in d.arcs for s in range(len(c)))


def is_connected(g: GraphLike) -> bool:
    """Reachability from vertex 1 ignoring arc direction for digraphs."""
    if isinstance(g, Digraph):
        adj = [g.out_masks[v] | g.in_masks[v] for v in range(g.n)]
    else:
        adj = g.adj_masks
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        rest = frontier
        while rest:
            low = rest & -rest
            nxt |= adj[low.bit_length() - 1]
            rest ^= low
        frontier = nxt & ~seen
        seen |= nxt
    return seen == (1 << g.n) - 1


def is_bipartite(g: Graph) -> Optional[dict[int, int]]:
    """A proper 2-coloring ``{vertex: 1 or 2}`` if one exists, else ``None``."""
    color: dict[int, int] = {}
    for root in range(1, g.n + 1):
        if root in color:
            continue
        color[root] = 1
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in g.neighbors(v):
                if w not in color:
                    color[w] = 3 - color[v]
                    queue.append(w)
                elif color[w] == color[v]:
                    return None
    return dict(sorted(color.items()))


def is_proper_coloring(g: Graph, coloring, k: Optional[int] = None) -> bool:
    if any(v not in coloring for v in range(1, g.n + 1)):
        return False
    if k is not None and any(not (1 <= coloring[v] <= k) for v in range(1, g.n + 1)):
        return False
    return all(coloring[u] != coloring[v] for u, v in g.edges)


# --------------------------------------------------------------------------
# exact combinatorial bounds


def _mask_to_vertices(mask: int) -> frozenset:
    return frozenset(_bits_to_vertices(mask))


def mais(d: GraphLike, cap: int = DEFAULT_MAIS_CAP) -> tuple[int, frozenset]:
    """Size and witness of a maximum acyclic induced subgraph.

    Exhaustive over vertex subsets by descending size; the witness is the
    lexicographically least maximum subset.
    """
    d = as_digraph(d)
    if d.n > cap:
        raise CapExceeded(f"mais: n={d.n} exceeds the exhaustive-search cap {cap}")
    out = d.out_masks
    for size in range(d.n, 0, -1):
        for combo in combinations(range(d.n), size):
            mask = 0
            for v in combo:
                mask |= 1 << v
            if _acyclic_mask(out, mask):
                return size, _mask_to_vertices(mask)
    raise AssertionError("unreachable: every single vertex is acyclic")


def independence_number(g: Graph, cap: int = DEFAULT_MAIS_CAP) -> tuple[int, frozenset]:
    """Size and lexicographically least witness of a maximum independent set."""
    if g.n > cap:
        raise CapExceeded(f"independence_number: n={g.n} exceeds the cap {cap}")
    adj = g.adj_masks
    for size in range(g.n, 0, -1):
        for combo in combinations(range(g.n), size):
            mask = 0
            for v in combo:
                mask |= 1 << v
            if all(not (adj[v] & mask) for v in combo):
                return size, _mask_to_vertices(mask)
    raise AssertionError("unreachable")


def maximum_matching(g: Graph) -> list[tuple[int, int]]:
    """A maximum matching, found by Edmonds' augmenting-path search with
    blossom contraction. Returned as sorted ``(u, v)`` pairs with ``u < v``.
    """
    n = g.n
    if n > MATCHING_CAP:
        raise CapExceeded(f"maximum_matching: n={n} exceeds the cap {MATCHING_CAP}")
    adj = [[w - 1 for w in g.neighbors(v + 1)] for v in range(n)]
    match = [-1] * n

    def find_path(root):
        parent = [-1] * n
        base = list(range(n))
        used = [False] * n
        used[root] = True
        queue = deque([root])

        def lca(a, b):
            seen = [False] * n
            while True:
                a = base[a]
                seen[a] = True
                if match[a] == -1:
                    break
                a = parent[match[a]]
            while True:
                b = base[b]
                if seen[b]:
                    return b
                b = parent[match[b]]

        def mark_path(v, b, child, blossom):
            while base[v] != b:
                blossom[base[v]] = blossom[base[match[v]]] = True
                parent[v] = child
                child = match[v]
                v = parent[match[v]]

        while queue:
            v = queue.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and parent[match[to]] != -1):
                    cur = lca(v, to)
                    blossom = [False] * n
                    mark_path(v, cur, to, blossom)
                    mark_path(to, cur, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if match[to] == -1:
                        return to, parent
                    used[match[to]] = True
                    queue.append(match[to])
        return -1, parent

    for v in range(n):
        if match[v] != -1:
            continue
        end, parent = find_path(v)
        while end != -1:
            pv = parent[end]
            ppv = match[pv]
            match[end] = pv
            match[pv] = end
            end = ppv
    return sorted((v + 1, match[v] + 1) for v in range(n) if match[v] > v)


def matching_number(g: Graph) -> int:
    return len(maximum_matching(g))
