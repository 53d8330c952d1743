"""Edge colourings of bipartite multigraphs.

proper_edge_colouring colours any bipartite multigraph with exactly
Delta colours (Konig's theorem), inserting edges one at a time and flipping
an alternating path whenever no colour is free at both endpoints.

equitable_edge_colouring handles the case where every degree is a multiple
of k: each vertex is split into deg(v)/k copies of degree k, the split graph
is properly coloured with k colours and the colours are pulled back, so each
colour appears deg(v)/k times at every vertex.

Edges are identified by their position in the edge list, so parallel edges
stay distinguishable. Colours are numbered 1..k.
"""

from typing import List, Sequence, Tuple

import numpy as np

from .errors import ColouringError


class BipartiteMultigraph:
    """Bipartite multigraph with numbered left and right vertices.

    Args:
        left (int): Number of left vertices, indexed 0..left-1
        right (int): Number of right vertices, indexed 0..right-1
        edges: Sequence of (left index, right index) pairs; duplicates are
            distinct parallel edges

    Raises:
        ValueError: If an endpoint is out of range
    """

    def __init__(self, left: int, right: int, edges: Sequence[Tuple[int, int]] = ()):
        self.left = left
        self.right = right
        self.edges: List[Tuple[int, int]] = [(int(u), int(v)) for u, v in edges]
        for u, v in self.edges:
            if not (0 <= u < left and 0 <= v < right):
                raise ValueError(f"edge ({u}, {v}) outside {left}+{right} vertices")

    def left_degrees(self) -> np.ndarray:
        return np.bincount([u for u, _ in self.edges], minlength=self.left)

    def right_degrees(self) -> np.ndarray:
        return np.bincount([v for _, v in self.edges], minlength=self.right)

    def max_degree(self) -> int:
        if not self.edges:
            return 0
        return int(max(self.left_degrees().max(), self.right_degrees().max()))

    def __len__(self):
        return len(self.edges)

    def __repr__(self):
        return f"BipartiteMultigraph({self.left}+{self.right}, edges={len(self.edges)})"


class EdgeColouring:
    """Assignment of a colour in 1..colours to every edge of a graph.

    Attributes:
        colours (int): Number of colours available
        assignment (Tuple[int, ...]): Colour of each edge, by edge position
    """

    def __init__(self, colours: int, assignment: Sequence[int]):
        self.colours = colours
        self.assignment = tuple(int(c) for c in assignment)

    def is_proper(self, graph: BipartiteMultigraph) -> bool:
        """No two edges sharing a vertex share a colour."""
        seen = set()
        for (u, v), colour in zip(graph.edges, self.assignment):
            if not 1 <= colour <= self.colours:
                return False
            if ("L", u, colour) in seen or ("R", v, colour) in seen:
                return False
            seen.add(("L", u, colour))
            seen.add(("R", v, colour))
        return len(self.assignment) == len(graph.edges)

    def is_equitable(self, graph: BipartiteMultigraph, k: int) -> bool:
        """Every colour 1..k appears deg(v)/k times at every vertex v."""
        if len(self.assignment) != len(graph.edges):
            return False
        if any(not 1 <= c <= k for c in self.assignment):
            return False
        left = np.zeros((graph.left, k), dtype=np.int64)
        right = np.zeros((graph.right, k), dtype=np.int64)
        for (u, v), colour in zip(graph.edges, self.assignment):
            left[u, colour - 1] += 1
            right[v, colour - 1] += 1
        for counts, degrees in ((left, graph.left_degrees()), (right, graph.right_degrees())):
            if np.any(degrees % k) or np.any(counts != (degrees // k)[:, None]):
                return False
        return True

    def __repr__(self):
        return f"EdgeColouring(colours={self.colours}, edges={len(self.assignment)})"


def proper_edge_colouring(graph: BipartiteMultigraph) -> EdgeColouring:
    """Colour the edges with Delta colours so that adjacent edges differ.

    Edges are inserted in list order. For edge (u, v) the smallest colour
    free at both endpoints is used when one exists. Otherwise, with a the
    smallest colour free at u and b the smallest free at v, the a/b
    alternating path starting at v is flipped, which frees a at v without
    touching u, and the edge gets colour a.

    Returns:
        EdgeColouring: A proper colouring with max_degree() colours
    """
    delta = graph.max_degree()
    # at[side][vertex][colour] is the edge holding that colour, or -1
    at = (
        [[-1] * (delta + 1) for _ in range(graph.left)],
        [[-1] * (delta + 1) for _ in range(graph.right)],
    )
    colour_of = [0] * len(graph.edges)

    def smallest_free(slots: List[int]) -> int:
        return slots.index(-1, 1)

    for e, (u, v) in enumerate(graph.edges):
        at_u, at_v = at[0][u], at[1][v]
        common = next((c for c in range(1, delta + 1) if at_u[c] < 0 and at_v[c] < 0), 0)
        if common:
            colour = common
        else:
            a, b = smallest_free(at_u), smallest_free(at_v)
            _flip_path(graph, at, colour_of, v, a, b)
            colour = a
        colour_of[e] = colour
        at_u[colour] = e
        at_v[colour] = e

    return EdgeColouring(delta, colour_of)


def _flip_path(graph, at, colour_of, start: int, a: int, b: int):
    """Swap colours a and b along the alternating path leaving right vertex start."""
    path = []
    side, vertex, colour = 1, start, a
    while at[side][vertex][colour] >= 0:
        edge = at[side][vertex][colour]
        path.append(edge)
        u, v = graph.edges[edge]
        side, vertex = (0, u) if side == 1 else (1, v)
        colour = b if colour == a else a

    for edge in path:
        u, v = graph.edges[edge]
        old = colour_of[edge]
        if at[0][u][old] == edge:
            at[0][u][old] = -1
        if at[1][v][old] == edge:
            at[1][v][old] = -1
    for edge in path:
        u, v = graph.edges[edge]
        new = b if colour_of[edge] == a else a
        colour_of[edge] = new
        at[0][u][new] = edge
        at[1][v][new] = edge


def equitable_edge_colouring(graph: BipartiteMultigraph, k: int) -> EdgeColouring:
    """Colour the edges with k colours, each appearing deg(v)/k times at v.

    Each vertex is split into deg(v)/k copies: its incident edges, in edge
    list order, go k at a time to consecutive copies. The split graph has
    maximum degree k, so its proper colouring uses colours 1..k.

    Raises:
        ColouringError: If k < 1 or some degree is not a multiple of k
    """
    if k < 1:
        raise ColouringError(f"number of colours must be positive, got {k}")
    for side, degrees in (("left", graph.left_degrees()), ("right", graph.right_degrees())):
        bad = np.flatnonzero(degrees % k)
        if bad.size:
            raise ColouringError(
                f"{side} vertex {bad[0]} has degree {degrees[bad[0]]}, not a multiple of {k}"
            )
    if not graph.edges:
        return EdgeColouring(k, [])

    seen_left = [0] * graph.left
    seen_right = [0] * graph.right
    left_base = np.concatenate(([0], np.cumsum(graph.left_degrees() // k)))
    right_base = np.concatenate(([0], np.cumsum(graph.right_degrees() // k)))
    split_edges = []
    for u, v in graph.edges:
        split_edges.append(
            (left_base[u] + seen_left[u] // k, right_base[v] + seen_right[v] // k)
        )
        seen_left[u] += 1
        seen_right[v] += 1

    split = BipartiteMultigraph(int(left_base[-1]), int(right_base[-1]), split_edges)
    colouring = proper_edge_colouring(split)
    return EdgeColouring(k, colouring.assignment)
