"""Construction for frameworks whose regions form a tree structure.

Start from a row-realization W and fix it up one vertical alignment class
at a time. For the class represented by its bottom-most region R, the top
set is every row from the top of the grid down to R's last row, restricted
to R's columns. The regions directly below R cut the top set into chunks;
with d the gcd of the chunk widths, the top set is rearranged row by row so
that every width-d sub-chunk holds each symbol equally often. Every row of
a top set lies inside a single region, so W stays a row-realization.

Once all classes are done, the strips of the refined framework each hold
every symbol once per column, and the strip outline of W is realized.
"""

import logging
from math import gcd
from typing import List, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from ..errors import ColouringError, ConstructionError
from ..framework import RegionPartition, column_groups, refine
from ..graph import BipartiteMultigraph, equitable_edge_colouring
from ..outline import LatinSquare, realize_outline, validate_outline
from ..verify import verify_row_realization
from .common import checked, require_family
from .rows import RowLatinSquare, row_realization, strip_outline


class TopSetContext(BaseModel):
    """Top set of one vertical alignment class.

    Attributes:
        representative (int): Label of the bottom-most region of the class
        rows (int): Number of rows, from the top of the grid to the
            representative's last row
        left (int): 1-based first column
        width (int): Number of columns
        chunk_widths (Tuple[int, ...]): Widths of the chunks, left to right
        n (int): Order of the framework
    """

    model_config = ConfigDict(frozen=True)

    representative: int
    rows: int
    left: int
    width: int
    chunk_widths: Tuple[int, ...]
    n: int

    @property
    def d(self) -> int:
        return gcd(*self.chunk_widths)

    @property
    def q(self) -> int:
        return self.width // self.d

    @property
    def r(self) -> int:
        """Copies of each symbol in the top set."""
        return self.rows * self.width // self.n

    def columns(self) -> slice:
        return slice(self.left - 1, self.left - 1 + self.width)

    def chunks(self) -> List[slice]:
        edges = np.concatenate(([0], np.cumsum(self.chunk_widths))) + self.left - 1
        return [slice(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:])]


def top_sets(partition: RegionPartition) -> List[TopSetContext]:
    """Top sets of all vertical alignment classes, parents before children.

    Raises:
        ConstructionError: If a chunk's cell count is not a multiple of n
    """
    rects = partition.rects()
    n = partition.order
    classes = {}
    for label, rect in rects.items():
        classes.setdefault((rect.left, rect.width), []).append(label)
    representatives = [max(members, key=lambda v: rects[v].top) for members in classes.values()]
    representatives.sort(key=lambda v: (rects[v].top, rects[v].left))

    contexts = []
    for label in representatives:
        rect = rects[label]
        lefts = sorted(
            q.left
            for q in rects.values()
            if q.top == rect.bottom + 1 and rect.left <= q.left <= rect.right
        ) or [rect.left]
        widths = tuple(int(w) for w in np.diff(lefts + [rect.right + 1]))
        context = TopSetContext(
            representative=label,
            rows=rect.bottom,
            left=rect.left,
            width=rect.width,
            chunk_widths=widths,
            n=n,
        )
        for w in widths:
            if (context.rows * w) % n:
                raise ConstructionError(
                    f"chunk of width {w} under region {label} has {context.rows * w} cells, "
                    f"not a multiple of {n}",
                    framework=partition.to_text(),
                )
        contexts.append(context)
    return contexts


def rearrange_top_set(grid: np.ndarray, context: TopSetContext):
    """Permute each row of a top set so every width-d sub-chunk is balanced.

    The rows x symbols multigraph of the top set has row degrees q*d and
    symbol degrees r, both multiples of q. In an equitable q-colouring each
    row has d symbols of each colour; those of colour h go to the h-th
    sub-chunk, in increasing order.
    """
    d, q, n = context.d, context.q, context.n
    block = grid[: context.rows, context.columns()]
    edges = [(i, int(x) - 1) for i in range(context.rows) for x in block[i]]
    try:
        colouring = equitable_edge_colouring(BipartiteMultigraph(context.rows, n, edges), q)
    except ColouringError as e:
        raise ConstructionError(f"top set of region {context.representative}: {e}")

    by_colour = [[[] for _ in range(q)] for _ in range(context.rows)]
    for (i, symbol), colour in zip(edges, colouring.assignment):
        by_colour[i][colour - 1].append(symbol + 1)
    for i in range(context.rows):
        block[i] = np.concatenate([sorted(symbols) for symbols in by_colour[i]])


def _check_top_set(grid: np.ndarray, partition: RegionPartition, context: TopSetContext):
    report = verify_row_realization(grid, partition)
    if not report.ok:
        raise ConstructionError(
            f"rearranging under region {context.representative} broke the row-realization:\n"
            f"{report.summary()}",
            framework=partition.to_text(),
        )
    for chunk, width in zip(context.chunks(), context.chunk_widths):
        counts = np.bincount(grid[: context.rows, chunk].ravel(), minlength=context.n + 1)[1:]
        expected = context.rows * width // context.n
        if np.any(counts != expected):
            raise ConstructionError(
                f"chunk at columns {chunk.start + 1}..{chunk.stop} under region "
                f"{context.representative} is unbalanced",
                framework=partition.to_text(),
            )


def balanced_row_realization(partition: RegionPartition) -> RowLatinSquare:
    """Row-realization whose refined strips hold each symbol once per column.

    Raises:
        ConstructionError: If a rearrangement step breaks an invariant
    """
    grid = np.array(row_realization(partition).grid)
    for context in top_sets(partition):
        if context.q > 1:
            rearrange_top_set(grid, context)
        _check_top_set(grid, partition, context)
        logging.debug(
            f"Top set of region {context.representative}: {context.rows}x{context.width}, "
            f"chunks {context.chunk_widths}, d={context.d}, q={context.q}, r={context.r}"
        )
    return RowLatinSquare(grid)


def realize_tree(partition: RegionPartition) -> LatinSquare:
    """Realize a framework whose regions form a tree structure.

    Raises:
        ClassificationMismatch: If the framework is not a tree structure
        ConstructionError: If an intermediate check or the final
            verification fails
    """
    require_family(partition, "tree", "tree")
    square = balanced_row_realization(partition)
    widths = column_groups(refine(partition))
    outline = strip_outline(square, widths)
    report = validate_outline(outline)
    if not report.ok:
        raise ConstructionError(
            f"refined strips do not form an outline square: {report.message}",
            framework=partition.to_text(),
        )
    return checked(realize_outline(outline), partition, "tree")
