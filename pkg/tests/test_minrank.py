import random

import pytest

from mrkit.errors import CapExceeded
from mrkit.field import FieldMatrix, rank
from mrkit.graphs import Digraph, Graph, as_digraph, complete_digraph, directed_cycle, mais, star_graph
from mrkit.minrank import fits, min_rank, min_rank_le, min_rank_naive
from mrkit.sweep import all_digraphs


def test_fits_examples(side_digraph, rank3_matrix):
    assert fits(rank3_matrix, side_digraph)
    assert fits(FieldMatrix.identity(5), side_digraph)
    # zero diagonal
    assert not fits(FieldMatrix.zeros(5, 5), side_digraph)
    # entry (1, 3) is not an arc of side_digraph
    bad = [list(r) for r in rank3_matrix.tolist()]
    bad[0][2] = 1
    assert not fits(FieldMatrix(bad, 2), side_digraph)


def test_fits_rejects_wrong_shape(side_digraph):
    with pytest.raises(ValueError):
        fits(FieldMatrix.identity(4), side_digraph)


def test_fits_accepts_undirected_graph(path3):
    m = FieldMatrix([[1, 1, 1], [1, 1, 0], [1, 0, 1]], 2)
    assert fits(m, path3)
    assert not fits(FieldMatrix([[1, 0, 0], [0, 1, 1], [0, 0, 1]], 2), path3)


def test_min_rank_five_receivers(side_digraph, rank3_matrix):
    res = min_rank(side_digraph, 2)
    assert res.value == 3
    assert fits(res.witness, side_digraph) and rank(res.witness) == 3
    # the search order reproduces the hand-built matrix
    assert res.witness == rank3_matrix


def test_min_rank_le_five_receivers(side_digraph):
    assert min_rank_le(side_digraph, 2, 2) is None
    m = min_rank_le(side_digraph, 2, 3)
    assert m is not None and fits(m, side_digraph) and rank(m) <= 3
    assert min_rank_le(side_digraph, 2, 5) is not None


@pytest.mark.parametrize("q", [2, 3, 5])
def test_min_rank_extremes(q):
    assert min_rank(complete_digraph(4), q).value == 1
    assert min_rank(Digraph(4), q).value == 4
    assert min_rank(Digraph(1), q).value == 1


@pytest.mark.parametrize("n", [2, 3, 5, 6])
def test_min_rank_directed_cycle(n):
    # a single circuit: mais is n - 1 and the circuit matrix reaches it
    assert min_rank(directed_cycle(n), 2).value == n - 1


def test_min_rank_star_and_F(graph_F):
    assert min_rank(star_graph(5), 2).value == 4
    assert min_rank(graph_F, 2).value == 3
    assert min_rank(graph_F, 3).value == 3


def test_min_rank_le_argument_checks(side_digraph):
    with pytest.raises(ValueError):
        min_rank_le(side_digraph, 2, 0)
    with pytest.raises(ValueError):
        min_rank_le(side_digraph, 2, 6)
    with pytest.raises(ValueError):
        min_rank(side_digraph, 4)


def test_caps_refuse_oversized_input():
    with pytest.raises(CapExceeded):
        min_rank(Digraph(25), 2)
    with pytest.raises(CapExceeded):
        min_rank(Digraph(6), 2, max_n=5)
    with pytest.raises(CapExceeded):
        min_rank(complete_digraph(8), 3, max_row_candidates=3**6)
    with pytest.raises(CapExceeded):
        min_rank_naive(complete_digraph(6), 2)


def test_search_is_deterministic(side_digraph):
    a = min_rank(side_digraph, 3)
    b = min_rank(side_digraph, 3)
    assert a == b


def test_naive_agrees_all_digraphs_n3():
    for n in range(1, 4):
        for d in all_digraphs(n):
            for q in (2, 3):
                assert min_rank(d, q).value == min_rank_naive(d, q).value


def test_naive_agrees_all_digraphs_n4_gf2():
    for d in all_digraphs(4):
        res = min_rank(d, 2)
        assert res.value == min_rank_naive(d, 2).value
        assert fits(res.witness, d) and rank(res.witness) == res.value


@pytest.mark.parametrize("q, max_arcs", [(2, 12), (3, 7)])
def test_naive_agrees_random_n5(q, max_arcs):
    rng = random.Random(100 + q)
    pairs = [(u, v) for u in range(1, 6) for v in range(1, 6) if u != v]
    for _ in range(100):
        d = Digraph(5, rng.sample(pairs, rng.randint(0, max_arcs)))
        res = min_rank(d, q)
        assert res.value == min_rank_naive(d, q).value
        assert fits(res.witness, d)


def test_sandwich_and_monotonicity():
    rng = random.Random(9)
    for _ in range(150):
        n = rng.randint(2, 6)
        pairs = [(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v]
        arcs = rng.sample(pairs, rng.randint(0, len(pairs)))
        d = Digraph(n, arcs)
        for q in (2, 3) if n <= 5 else (2,):
            value = min_rank(d, q).value
            assert mais(d)[0] <= value <= n
            extra = [p for p in pairs if p not in d.arcs]
            if extra:
                bigger = Digraph(n, arcs + [rng.choice(extra)])
                assert min_rank(bigger, q).value <= value


def test_graph_input_equals_symmetric_digraph():
    g = Graph(4, [(1, 2), (2, 3), (3, 4), (4, 1)])
    assert min_rank(g, 2) == min_rank(as_digraph(g), 2)
    assert min_rank(g, 2).value == 2
