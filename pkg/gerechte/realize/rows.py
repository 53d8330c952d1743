"""Row-realizations and column-strip outlines.

A row-realization of a gerechte framework is an n x n array in which every
row and every region holds each symbol once; columns may repeat symbols.
Every gerechte framework has one, rectangular regions or not.
"""

import logging
from typing import Sequence

import numpy as np

from ..errors import ConstructionError, FrameworkError, OutlineError
from ..framework import RegionPartition
from ..graph import BipartiteMultigraph, proper_edge_colouring
from ..outline import Composition, OutlineLatinSquare
from ..verify import verify_row_realization


class RowLatinSquare:
    """n x n array of symbols 1..n with each symbol once per row."""

    def __init__(self, grid):
        array = np.array(grid, dtype=np.int64)
        if array.ndim != 2 or array.shape[0] != array.shape[1]:
            raise ValueError(f"a square needs an n x n grid, got shape {array.shape}")
        array.setflags(write=False)
        self.grid = array

    @property
    def n(self) -> int:
        return self.grid.shape[0]

    def is_row_latin(self) -> bool:
        target = np.arange(1, self.n + 1)
        return all(np.array_equal(np.sort(row), target) for row in self.grid)

    def __repr__(self):
        return f"RowLatinSquare(n={self.n})"


def row_realization(partition: RegionPartition) -> RowLatinSquare:
    """Build a row-realization of a gerechte framework.

    The rows x regions multigraph has one edge per cell and is n-regular, so
    a proper edge colouring uses exactly n colours. Within each row and
    region the colours of its edges are written into its cells in
    increasing order, left to right.

    Raises:
        FrameworkError: If the partition is not a gerechte framework
    """
    if not partition.is_gerechte():
        raise FrameworkError("row-realizations exist only for gerechte frameworks")
    n = partition.order
    labels = partition.labels
    cells = [(r, c) for r in range(n) for c in range(n)]
    graph = BipartiteMultigraph(n, n, [(r, labels[r, c] - 1) for r, c in cells])
    colouring = proper_edge_colouring(graph)

    groups = {}
    for (r, c), colour in zip(cells, colouring.assignment):
        groups.setdefault((r, labels[r, c]), []).append((c, colour))
    grid = np.zeros((n, n), dtype=np.int64)
    for (r, _), members in groups.items():
        columns = sorted(c for c, _ in members)
        grid[r, columns] = sorted(colour for _, colour in members)

    square = RowLatinSquare(grid)
    report = verify_row_realization(square, partition)
    if not report.ok:
        raise ConstructionError(
            f"row-realization failed:\n{report.summary()}", framework=partition.to_text()
        )
    logging.debug(f"Row-realization of order {n} built")
    return square


def strip_outline(square, widths: Sequence[int]) -> OutlineLatinSquare:
    """Amalgamate the column strips of a row-latin square.

    Rows and symbols stay unit; consecutive columns are merged into strips of
    the given widths.

    Raises:
        OutlineError: If the widths do not sum to n
    """
    grid = square.grid
    n = grid.shape[0]
    T = Composition(widths)
    if T.n != n:
        raise OutlineError(f"strip widths sum to {T.n}, square has order {n}")
    rows = np.broadcast_to(np.arange(n)[:, None], grid.shape)
    strips = np.broadcast_to(T.block_index()[None, :], grid.shape)
    counts = np.zeros((n, len(T), n), dtype=np.int64)
    np.add.at(counts, (rows, strips, grid - 1), 1)
    return OutlineLatinSquare(Composition.ones(n), T, Composition.ones(n), counts)
