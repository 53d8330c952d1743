import numpy as np
import pytest

from gerechte.errors import ColouringError
from gerechte.graph import (
    BipartiteMultigraph,
    EdgeColouring,
    equitable_edge_colouring,
    proper_edge_colouring,
)


def random_graph(rng, max_side=20, max_edges=400):
    left = int(rng.integers(1, max_side + 1))
    right = int(rng.integers(1, max_side + 1))
    count = int(rng.integers(0, max_edges + 1))
    edges = list(zip(rng.integers(0, left, count).tolist(), rng.integers(0, right, count).tolist()))
    return BipartiteMultigraph(left, right, edges)


def regular_graph(rng, side, degree):
    """Union of random perfect matchings: every vertex has the given degree."""
    edges = []
    for _ in range(degree):
        edges.extend(enumerate(rng.permutation(side).tolist()))
    order = rng.permutation(len(edges))
    return BipartiteMultigraph(side, side, [edges[i] for i in order])


def test_degrees_and_parallel_edges():
    graph = BipartiteMultigraph(2, 3, [(0, 1), (0, 1), (1, 2)])
    assert graph.left_degrees().tolist() == [2, 1]
    assert graph.right_degrees().tolist() == [0, 2, 1]
    assert graph.max_degree() == 2
    assert len(graph) == 3


def test_edge_out_of_range():
    with pytest.raises(ValueError):
        BipartiteMultigraph(1, 1, [(0, 1)])


def test_proper_colouring_of_parallel_edges():
    graph = BipartiteMultigraph(1, 1, [(0, 0)] * 4)
    colouring = proper_edge_colouring(graph)
    assert sorted(colouring.assignment) == [1, 2, 3, 4]
    assert colouring.is_proper(graph)


def test_empty_graph():
    graph = BipartiteMultigraph(3, 2)
    assert proper_edge_colouring(graph).assignment == ()
    assert equitable_edge_colouring(graph, 2).assignment == ()


def test_proper_colouring_needs_path_flip():
    # Inserting (1, 0) last forces an alternating path recolouring
    graph = BipartiteMultigraph(2, 2, [(0, 0), (0, 1), (1, 1), (1, 0)])
    colouring = proper_edge_colouring(graph)
    assert colouring.colours == 2
    assert colouring.is_proper(graph)


def test_is_proper_detects_conflicts():
    graph = BipartiteMultigraph(1, 2, [(0, 0), (0, 1)])
    assert not EdgeColouring(2, [1, 1]).is_proper(graph)
    assert not EdgeColouring(2, [1, 3]).is_proper(graph)
    assert EdgeColouring(2, [2, 1]).is_proper(graph)


@pytest.mark.parametrize("seed", range(50))
def test_proper_colouring_uses_max_degree_colours(seed):
    rng = np.random.default_rng(seed)
    graph = random_graph(rng)
    colouring = proper_edge_colouring(graph)
    assert colouring.colours == graph.max_degree()
    assert colouring.is_proper(graph)
    if len(graph):
        assert max(colouring.assignment) <= graph.max_degree()


@pytest.mark.parametrize("seed", range(30))
def test_equitable_colouring_of_regular_graphs(seed):
    rng = np.random.default_rng(1000 + seed)
    degree = int(rng.integers(1, 13))
    graph = regular_graph(rng, int(rng.integers(1, 15)), degree)
    for k in (k for k in range(1, degree + 1) if degree % k == 0):
        colouring = equitable_edge_colouring(graph, k)
        assert colouring.colours == k
        assert colouring.is_equitable(graph, k)


@pytest.mark.slow
def test_colourings_on_1000_random_graphs():
    for seed in range(1000):
        rng = np.random.default_rng(5000 + seed)
        graph = random_graph(rng)
        colouring = proper_edge_colouring(graph)
        assert colouring.colours == graph.max_degree(), seed
        assert colouring.is_proper(graph), seed

        side = int(rng.integers(1, 21))
        degree = int(rng.integers(1, min(20, 400 // side) + 1))
        regular = regular_graph(rng, side, degree)
        for k in (k for k in range(1, degree + 1) if degree % k == 0):
            assert equitable_edge_colouring(regular, k).is_equitable(regular, k), (seed, k)


def test_equitable_colouring_with_uneven_degrees():
    # Left degrees 4 and 2, right degrees 2, 2, 2: every vertex sees both colours equally
    graph = BipartiteMultigraph(
        2, 3, [(0, 0), (0, 1), (0, 2), (0, 0), (1, 1), (1, 2)]
    )
    colouring = equitable_edge_colouring(graph, 2)
    assert colouring.is_equitable(graph, 2)
    assert not colouring.is_equitable(graph, 3)


def test_equitable_colouring_rejects_indivisible_degrees():
    graph = BipartiteMultigraph(1, 1, [(0, 0)] * 3)
    with pytest.raises(ColouringError, match="not a multiple of 2"):
        equitable_edge_colouring(graph, 2)
    with pytest.raises(ColouringError):
        equitable_edge_colouring(graph, 0)


def test_colouring_is_deterministic():
    rng = np.random.default_rng(7)
    graph = random_graph(rng)
    assert proper_edge_colouring(graph).assignment == proper_edge_colouring(graph).assignment
