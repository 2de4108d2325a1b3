"""Instance enumeration, seeded random instances, and an order-preserving
parallel map for exhaustive verification runs."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from itertools import combinations
from typing import Callable, Iterable, Iterator, Optional

from .graphs import Digraph, Graph


def all_digraphs(n: int) -> Iterator[Digraph]:
    """Every labelled digraph on n vertices, 2**(n(n-1)) of them."""
    pairs = [(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v]
    for code in range(1 << len(pairs)):
        yield Digraph(n, [p for k, p in enumerate(pairs) if (code >> k) & 1])


def all_graphs(n: int) -> Iterator[Graph]:
    """Every labelled graph on n vertices, 2**(n(n-1)/2) of them."""
    pairs = list(combinations(range(1, n + 1), 2))
    for code in range(1 << len(pairs)):
        yield Graph(n, [p for k, p in enumerate(pairs) if (code >> k) & 1])


def random_digraph(n: int, p: float, rng: random.Random) -> Digraph:
    return Digraph(n, [(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v and rng.random() < p])


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return Graph(n, [e for e in combinations(range(1, n + 1), 2) if rng.random() < p])


def random_graph_m(n: int, m: int, rng: random.Random) -> Graph:
    pairs = list(combinations(range(1, n + 1), 2))
    if m > len(pairs):
        raise ValueError(f"a graph on {n} vertices has at most {len(pairs)} edges")
    return Graph(n, rng.sample(pairs, m))


def generate(kind: str, n: int, seed: int, p: Optional[float] = None, edges: Optional[int] = None):
    """Seeded instance for the ``gen`` command (``random.Random``, Mersenne Twister)."""
    rng = random.Random(seed)
    if kind == "digraph":
        if edges is not None:
            pairs = [(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v]
            if edges > len(pairs):
                raise ValueError(f"a digraph on {n} vertices has at most {len(pairs)} arcs")
            return Digraph(n, rng.sample(pairs, edges))
        return random_digraph(n, 0.5 if p is None else p, rng)
    if kind == "graph":
        if edges is not None:
            return random_graph_m(n, edges, rng)
        return random_graph(n, 0.5 if p is None else p, rng)
    raise ValueError(f"unknown instance kind {kind!r}")


def pmap(fn: Callable, items: Iterable, workers: int = 1, chunksize: int = 64) -> list:
    """``[fn(x) for x in items]``, optionally across processes; result order
    always follows input order."""
    items = list(items)
    if workers <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=chunksize))
