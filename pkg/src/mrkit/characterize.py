"""Recognizers for the near-extreme min-rank classes, with certificates.

Each recognizer returns its certificate (a coloring, a center, a matching
report) or ``None``. Builders turn certificates into explicit fitting
matrices so every positive verdict can be re-checked by rank computation.
Unmet hypotheses of a characterization raise :class:`HypothesisError`; they
are never reported as a negative answer.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Optional, Union

from . import field
from .errors import CapExceeded, HypothesisError
from .field import FieldMatrix, check_modulus, format_matrix
from .graphs import (
    Digraph,
    Graph,
    as_digraph,
    complement,
    find_circuit,
    independence_number,
    is_acyclic,
    is_bipartite,
    is_circuit,
    is_complete,
    is_connected,
    matching_number,
    maximum_matching,
)
from .minrank import MAX_N, MAX_ROW_CANDIDATES, fits, min_rank

# --------------------------------------------------------------------------
# fair colorings


def is_fair_coloring(d: Digraph, coloring, k: Optional[int] = None) -> bool:
    """Check (C1) arc endpoints differ and (C2) out-neighbors share a color."""
    d = as_digraph(d)
    if any(v not in coloring for v in range(1, d.n + 1)):
        return False
    if k is not None and any(not 1 <= coloring[v] <= k for v in range(1, d.n + 1)):
        return False
    if any(coloring[u] == coloring[v] for u, v in d.arcs):
        return False
    for v in range(1, d.n + 1):
        if len({coloring[w] for w in d.out_neighbors(v)}) > 1:
            return False
    return True


def fair_k_coloring(d: Digraph, k: int) -> Optional[dict[int, int]]:
    """A fair k-coloring ``{vertex: color}`` or ``None``.

    Backtracking over vertices and colors in ascending order. ``forced[u]``
    is the color every out-neighbor of ``u`` must carry once one of them
    is colored.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    d = as_digraph(d)
    n = d.n
    succ = [[]] + [d.out_neighbors(v) for v in range(1, n + 1)]
    pred = [[]] + [d.in_neighbors(v) for v in range(1, n + 1)]
    color = [0] * (n + 1)
    forced = [0] * (n + 1)

    def place(v):
        if v > n:
            return True
        for c in range(1, k + 1):
            if forced[v] == c:
                continue  # an out-neighbor of v already has color c
            if any(color[w] == c for w in succ[v]) or any(color[u] == c for u in pred[v]):
                continue
            if any(forced[u] not in (0, c) for u in pred[v]):
                continue
            newly = [u for u in pred[v] if forced[u] == 0]
            for u in newly:
                forced[u] = c
            color[v] = c
            if place(v + 1):
                return True
            color[v] = 0
            for u in newly:
                forced[u] = 0
        return False

    if place(1):
        return {v: color[v] for v in range(1, n + 1)}
    return None


def is_fairly_3_colorable_partition(d: Digraph) -> Optional[tuple[frozenset, frozenset, frozenset]]:
    """A partition (A, B, C) where each class's out-neighborhoods fall inside
    a single other class, or ``None``. Classes may be empty.

    Searched directly on partitions, independently of :func:`fair_k_coloring`.
    """
    d = as_digraph(d)
    n = d.n
    cls = [-1] * (n + 1)
    # a vertex's condition can be judged once it and all its out-neighbors are placed
    ready_at = [[] for _ in range(n + 1)]
    for v in range(1, n + 1):
        ready_at[max([v] + d.out_neighbors(v))].append(v)

    def ok(v):
        targets = {cls[w] for w in d.out_neighbors(v)}
        return len(targets) <= 1 and cls[v] not in targets

    def place(v):
        if v > n:
            return True
        for c in range(3):
            cls[v] = c
            if all(ok(u) for u in ready_at[v]) and place(v + 1):
                return True
        cls[v] = -1
        return False

    if not place(1):
        return None
    parts = tuple(frozenset(v for v in range(1, n + 1) if cls[v] == c) for c in range(3))
    return parts


# --------------------------------------------------------------------------
# min-rank one, two, n


def check_minrank_1(d) -> bool:
    return is_complete(as_digraph(d))


def check_minrank_le_2_binary(d) -> Optional[dict[int, int]]:
    """A fair 3-coloring of the complement when mr over GF(2) is at most 2."""
    return fair_k_coloring(complement(as_digraph(d)), 3)


def coloring_to_matrix(d, coloring) -> FieldMatrix:
    """Binary fitting matrix of rank <= 2 from a fair 3-coloring of the
    complement.

    Classes A, B, C are colors 1, 2, 3. Row ``i`` is the indicator of the
    two classes other than the one holding i's complement out-neighbors;
    with no complement out-neighbors, the first class other than i's own
    is dropped.
    """
    d = as_digraph(d)
    comp = complement(d)
    if not is_fair_coloring(comp, coloring, 3):
        raise ValueError("not a fair 3-coloring of the complement")
    n = d.n
    rows = []
    for i in range(1, n + 1):
        targets = {coloring[j] for j in comp.out_neighbors(i)}
        if targets:
            (dropped,) = targets
        else:
            dropped = min(c for c in (1, 2, 3) if c != coloring[i])
        rows.append([0 if coloring[j] == dropped else 1 for j in range(1, n + 1)])
    return FieldMatrix(rows, 2, cols=n)


def matrix_to_coloring(d, m: FieldMatrix) -> dict[int, int]:
    """Fair 3-coloring of the complement read off a binary fitting matrix of
    rank <= 2.

    Takes the first pair of rows (ascending) spanning the row space; with
    supports S1, S2 the classes are A = S1 - S2, B = S1 & S2, C = S2 - S1.
    """
    d = as_digraph(d)
    if m.q != 2:
        raise ValueError("matrix_to_coloring needs a binary matrix")
    if not fits(m, d):
        raise ValueError("matrix does not fit the digraph")
    rk = field.rank(m)
    if rk > 2:
        raise ValueError(f"matrix has rank {rk} > 2")
    n = d.n
    first, second = 0, 0
    if rk == 2:
        second = next(t for t in range(1, n) if m.entries[t] != m.entries[0])
    s1 = {j + 1 for j, x in enumerate(m.entries[first]) if x}
    s2 = {j + 1 for j, x in enumerate(m.entries[second]) if x}
    coloring = {}
    for v in range(1, n + 1):
        if v in s1 and v not in s2:
            coloring[v] = 1
        elif v in s1:
            coloring[v] = 2
        elif v in s2:
            coloring[v] = 3
        else:
            raise AssertionError(f"vertex {v} outside both supports")
    return coloring


def check_graph_minrank_2(g: Graph) -> Optional[dict[int, int]]:
    """2-coloring of the complement when g is not complete and its
    complement is bipartite; this is exactly the graphs of min-rank 2."""
    if is_complete(g):
        return None
    return is_bipartite(complement(g))


def check_minrank_n(d) -> bool:
    return is_acyclic(as_digraph(d))


def circuit_to_matrix(d, circuit, q: int = 2) -> FieldMatrix:
    """Fitting matrix of rank <= n-1 built on a circuit (i_1, ..., i_r):
    row i_s is e_{i_s} - e_{i_{s+1}}, row i_r is e_{i_1} - e_{i_r}, and
    every other row is a unit vector."""
    d = as_digraph(d)
    check_modulus(q)
    c = tuple(circuit)
    if not is_circuit(d, c):
        raise ValueError(f"{c} is not a circuit of the digraph")
    n = d.n
    rows = [list(field.unit_vector(j, n, q)) for j in range(1, n + 1)]
    r = len(c)
    for s in range(r - 1):
        row = [0] * n
        row[c[s] - 1] = 1
        row[c[s + 1] - 1] = q - 1
        rows[c[s] - 1] = row
    last = [0] * n
    last[c[0] - 1] = 1
    last[c[-1] - 1] = q - 1
    rows[c[-1] - 1] = last
    return FieldMatrix(rows, q, cols=n)


# --------------------------------------------------------------------------
# stars: min-rank n - 1


def is_star(g: Graph) -> Optional[int]:
    n = g.n
    if n < 2 or len(g.edges) != n - 1:
        return None
    for v in range(1, n + 1):
        if g.degree(v) == n - 1:
            return v
    return None


def _require(cond, message):
    if not cond:
        raise HypothesisError(message)


def check_graph_minrank_n_minus_1(g: Graph) -> Optional[int]:
    """Star center when the connected graph g (n >= 2) has min-rank n-1."""
    _require(g.n >= 2, f"needs at least 2 vertices, got {g.n}")
    _require(is_connected(g), "needs a connected graph")
    return is_star(g)


def star_to_matrix(g: Graph, center: int, q: int = 2) -> FieldMatrix:
    """Rows e_i + e_j for each leaf j, and e_i + e_{j_1} for the center i."""
    check_modulus(q)
    if is_star(g) is None or g.degree(center) != g.n - 1:
        raise ValueError(f"not a star graph centered at {center}")
    n = g.n
    leaves = [v for v in range(1, n + 1) if v != center]
    rows = [None] * n
    for j in leaves:
        row = [0] * n
        row[center - 1] = 1
        row[j - 1] = 1
        rows[j - 1] = row
    rows[center - 1] = list(rows[leaves[0] - 1])
    return FieldMatrix(rows, q, cols=n)


# --------------------------------------------------------------------------
# the forbidden subgraph and min-rank n - 2

F_EDGES = ((1, 2), (1, 3), (2, 3), (3, 4), (4, 5), (4, 6))


@lru_cache(maxsize=None)
def forbidden_F() -> Graph:
    """Triangle 1-2-3, bridge 3-4, leaves 5 and 6 on vertex 4.

    Validated on first use: matching number 2 and min-rank 3 over GF(2)
    and GF(3). A failed check means the graph is wrong, not the test.
    """
    g = Graph(6, F_EDGES)
    nu = matching_number(g)
    mr2 = min_rank(g, 2).value
    mr3 = min_rank(g, 3).value
    if (nu, mr2, mr3) != (2, 3, 3):
        raise RuntimeError(f"forbidden graph self-check failed: nu={nu}, mr2={mr2}, mr3={mr3}")
    return g


def contains_subgraph_F(g: Graph) -> Optional[dict[int, int]]:
    """First (lexicographic) injective map F-vertex -> g-vertex carrying every
    F edge onto a g edge, or None. Plain subgraph containment, not induced."""
    f = forbidden_F()
    if g.n < f.n:
        return None
    f_deg = [0] + [f.degree(v) for v in range(1, f.n + 1)]
    g_deg = [0] + [g.degree(v) for v in range(1, g.n + 1)]
    # F-neighbors of v that come earlier in the assignment order 1..6
    back = [[] for _ in range(f.n + 1)]
    for u, v in f.edges:
        back[max(u, v)].append(min(u, v))
    image = [0] * (f.n + 1)
    used = set()

    def extend(v):
        if v > f.n:
            return True
        for w in range(1, g.n + 1):
            if w in used or g_deg[w] < f_deg[v]:
                continue
            if all(g.has_edge(image[u], w) for u in back[v]):
                image[v] = w
                used.add(w)
                if extend(v + 1):
                    return True
                used.discard(w)
        return False

    if extend(1):
        return {v: image[v] for v in range(1, f.n + 1)}
    return None


@dataclass(frozen=True)
class NMinus2Certificate:
    matching: tuple
    f_free: bool = True
    independent_set: frozenset = frozenset()


def check_graph_minrank_n_minus_2(g: Graph) -> Optional[NMinus2Certificate]:
    """Certificate when the connected graph g (n >= 6) has min-rank n-2:
    matching number exactly 2 and no subgraph isomorphic to F."""
    _require(g.n >= 6, f"needs at least 6 vertices, got {g.n}")
    _require(is_connected(g), "needs a connected graph")
    matching = maximum_matching(g)
    if len(matching) != 2:
        return None
    if contains_subgraph_F(g) is not None:
        return None
    return NMinus2Certificate(tuple(matching), True, independence_number(g)[1])


# --------------------------------------------------------------------------
# dispatcher


class Label(enum.Enum):
    MR1 = "MR1"
    MR2 = "MR2"
    MR_N = "MR_N"
    MR_N_MINUS_1 = "MR_N_MINUS_1"
    MR_N_MINUS_2 = "MR_N_MINUS_2"
    EXACT = "EXACT"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class Classification:
    label: Label
    q: int
    n: int
    value: Optional[int] = None
    certificate: dict = dc_field(default_factory=dict)
    notes: tuple = ()

    @property
    def title(self) -> str:
        if self.label is Label.EXACT:
            return f"EXACT({self.value})"
        return self.label.value

    def summary(self) -> str:
        parts = [self.title]
        if "center" in self.certificate:
            parts.append(f"center={self.certificate['center']}")
        return " ".join(parts)

    def to_text(self) -> str:
        """Structured text record: ``key value`` lines, then payload blocks."""
        lines = [self.summary(), f"label {self.title}", f"q {self.q}", f"n {self.n}"]
        if self.value is not None:
            lines.append(f"value {self.value}")
        cert = self.certificate
        if "center" in cert:
            lines.append(f"center {cert['center']}")
        if "coloring" in cert:
            lines.append("coloring " + " ".join(f"{v}:{c}" for v, c in sorted(cert["coloring"].items())))
        if "circuit" in cert:
            lines.append("circuit " + " ".join(str(v) for v in cert["circuit"]))
        if "matching" in cert:
            lines.append("matching " + " ".join(f"{u}-{v}" for u, v in cert["matching"]))
        if "f_free" in cert:
            lines.append(f"f_free {str(cert['f_free']).lower()}")
        if "embedding" in cert:
            lines.append("embedding " + " ".join(f"{a}→{b}" for a, b in sorted(cert["embedding"].items())))
        for note in self.notes:
            lines.append(f"note {note}")
        text = "\n".join(lines) + "\n"
        if "matrix" in cert:
            text += format_matrix(cert["matrix"])
        return text

    def to_dict(self) -> dict:
        cert = {}
        for key, val in self.certificate.items():
            if isinstance(val, FieldMatrix):
                cert[key] = val.tolist()
            elif isinstance(val, dict):
                cert[key] = {str(a): b for a, b in sorted(val.items())}
            elif isinstance(val, (tuple, list, frozenset, set)):
                cert[key] = sorted(val) if isinstance(val, (frozenset, set)) else [
                    list(x) if isinstance(x, tuple) else x for x in val
                ]
            else:
                cert[key] = val
        return {
            "label": self.title,
            "q": self.q,
            "n": self.n,
            "value": self.value,
            "certificate": cert,
            "notes": list(self.notes),
        }


def classify(
    obj: Union[Digraph, Graph],
    q: int = 2,
    *,
    max_n: int = MAX_N,
    max_row_candidates: int = MAX_ROW_CANDIDATES,
) -> Classification:
    """Label a graph or digraph with its min-rank class and a certificate.

    Order: MR1, MR_N, then (graphs) MR2 / MR_N_MINUS_1 / MR_N_MINUS_2 under
    their hypotheses or (digraphs over GF(2)) MR2, then an exact solve
    within the size caps, else UNKNOWN.
    """
    check_modulus(q)
    d = as_digraph(obj)
    n = d.n
    notes = []

    if check_minrank_1(d):
        return Classification(Label.MR1, q, n, 1, {"matrix": FieldMatrix.ones(n, n, q)})
    if check_minrank_n(d):
        return Classification(Label.MR_N, q, n, n, {"matrix": FieldMatrix.identity(n, q)})
    circuit = find_circuit(d)

    if isinstance(obj, Graph):
        two = check_graph_minrank_2(obj)
        if two is not None:
            rows = [[1 if two[j] == two[i] else 0 for j in range(1, n + 1)] for i in range(1, n + 1)]
            return Classification(
                Label.MR2, q, n, 2, {"coloring": two, "matrix": FieldMatrix(rows, q, cols=n)},
                ("2-coloring of the complement",),
            )
        try:
            center = check_graph_minrank_n_minus_1(obj)
        except HypothesisError as exc:
            center = None
            notes.append(f"star test skipped: {exc}")
        if center is not None:
            return Classification(
                Label.MR_N_MINUS_1, q, n, n - 1,
                {"center": center, "matrix": star_to_matrix(obj, center, q)},
            )
        try:
            cert = check_graph_minrank_n_minus_2(obj)
        except HypothesisError as exc:
            cert = None
            notes.append(f"n-2 test skipped: {exc}")
        if cert is not None:
            if q not in (2, 3):
                notes.append("n-2 characterization only exercised over GF(2) and GF(3)")
            return Classification(
                Label.MR_N_MINUS_2, q, n, n - 2,
                {"matching": cert.matching, "f_free": True}, tuple(notes),
            )
        if obj.n >= 6:
            emb = contains_subgraph_F(obj)
            if emb is not None:
                notes.append("contains F, so min-rank is at most n-3")
    elif q == 2:
        coloring = check_minrank_le_2_binary(d)
        if coloring is not None:
            return Classification(
                Label.MR2, q, n, 2,
                {"coloring": coloring, "matrix": coloring_to_matrix(d, coloring)},
                ("fair 3-coloring of the complement; valid over GF(2) only",),
            )
    else:
        notes.append("digraph MR2 test applies over GF(2) only")

    try:
        result = min_rank(d, q, max_n=max_n, max_row_candidates=max_row_candidates)
    except CapExceeded as exc:
        notes.append(f"exact solver refused: {exc}")
        cert = {"circuit": circuit} if circuit else {}
        return Classification(Label.UNKNOWN, q, n, None, cert, tuple(notes))
    return Classification(Label.EXACT, q, n, result.value, {"matrix": result.witness}, tuple(notes))
