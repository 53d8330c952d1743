"""Construction for frameworks of s x t and t x s rectangles.

With k = gcd(s, t), s' = s/k and t' = t/k, every region sits on the
k-lattice, so the framework reduces to F/k whose regions are s' x t' and
t' x s'. An array M on F/k is filled with the symbols 1..s't' so that
every reduced region holds each symbol once and every row and column holds
each symbol k times. Blowing each symbol of M up to k*k symbols gives an
outline square with k x k blocks whose realization realizes F.

M is filled separately for each orientation:

1. Regions in the same horizontal class (same top row) are filled from the
   ascending base block, the m-th one from the left with its rows shifted
   down by m. Class sizes are multiples of the region height, so every row
   of the class band sees every base row equally often.
2. Regions in the same vertical class (same left column) are taken top to
   bottom in groups as large as the region width; the j-th member of a
   group has its rows rotated left by j, so each column of the group sees
   every symbol once.
"""

import logging
from typing import Dict, List

import numpy as np

from ..errors import ConstructionError
from ..framework import Rect, RegionPartition, begin_counts, reduce
from ..outline import Composition, LatinSquare, OutlineLatinSquare, realize_outline
from .common import checked, require_family


class ReducedFill:
    """Symbol array on a reduced framework F/k.

    Args:
        grid: Square array of symbols 1..symbols
        reduced (RegionPartition): The reduced framework the array lives on
        k (int): Reduction factor; each symbol must occur k times per row
            and column
        symbols (int): Number of distinct symbols, s' * t'
    """

    def __init__(self, grid, reduced: RegionPartition, k: int, symbols: int):
        array = np.array(grid, dtype=np.int64)
        array.setflags(write=False)
        self.grid = array
        self.reduced = reduced
        self.k = k
        self.symbols = symbols

    @property
    def side(self) -> int:
        return self.grid.shape[0]

    def violations(self) -> List[str]:
        """Describe every broken row, column or region count."""
        problems = []
        for axis, lines in (("row", self.grid), ("column", self.grid.T)):
            for index, line in enumerate(lines):
                counts = np.bincount(line, minlength=self.symbols + 1)[1:]
                if np.any(counts != self.k) or counts.size != self.symbols:
                    problems.append(f"{axis} {index} has symbol counts {counts.tolist()}")
        target = np.arange(1, self.symbols + 1)
        for label in range(1, self.reduced.num_regions + 1):
            content = np.sort(self.grid[self.reduced.labels == label])
            if not np.array_equal(content, target):
                problems.append(f"region {label} holds {content.tolist()}")
        return problems

    def blow_up(self) -> OutlineLatinSquare:
        """Replace symbol x by the k*k symbols (x-1)k^2+1 .. x*k^2."""
        k2 = self.k * self.k
        n = self.side * self.k
        counts = np.zeros((self.side, self.side, n), dtype=np.int64)
        for x in range(1, self.symbols + 1):
            counts[self.grid == x, (x - 1) * k2 : x * k2] = 1
        block = Composition.uniform(self.k, self.side)
        return OutlineLatinSquare(block, block, Composition.ones(n), counts)

    def __repr__(self):
        return f"ReducedFill(side={self.side}, k={self.k}, symbols={self.symbols})"


def _fill_orientation(grid: np.ndarray, rects: Dict[int, Rect], a: int, b: int):
    """Fill the a x b regions of the reduced framework in place."""
    regions = [rect for rect in rects.values() if (rect.height, rect.width) == (a, b)]
    base = np.arange(1, a * b + 1).reshape(a, b)

    horizontal: Dict[int, List[Rect]] = {}
    for rect in regions:
        horizontal.setdefault(rect.top, []).append(rect)
    for top, members in horizontal.items():
        if len(members) % a:
            raise ConstructionError(
                f"{len(members)} {a}x{b} regions begin in reduced row {top}, not a multiple of {a}"
            )
        members.sort(key=lambda rect: rect.left)
        for m, rect in enumerate(members):
            grid[rect.index()] = base[(np.arange(a) - m) % a]

    vertical: Dict[int, List[Rect]] = {}
    for rect in regions:
        vertical.setdefault(rect.left, []).append(rect)
    for left, members in vertical.items():
        if len(members) % b:
            raise ConstructionError(
                f"{len(members)} {a}x{b} regions begin in reduced column {left}, "
                f"not a multiple of {b}"
            )
        members.sort(key=lambda rect: rect.top)
        for position, rect in enumerate(members):
            block = rect.index()
            grid[block] = np.roll(grid[block], -(position % b), axis=1)


def mixed_fill(reduced: RegionPartition, s_prime: int, t_prime: int, k: int) -> ReducedFill:
    """Fill the reduced framework with symbols 1..s't'.

    Raises:
        ConstructionError: If the fill breaks a row, column or region count
    """
    rects = reduced.rects()
    grid = np.zeros((reduced.rows, reduced.cols), dtype=np.int64)
    _fill_orientation(grid, rects, s_prime, t_prime)
    if s_prime != t_prime:
        _fill_orientation(grid, rects, t_prime, s_prime)

    fill = ReducedFill(grid, reduced, k, s_prime * t_prime)
    problems = fill.violations()
    if problems:
        raise ConstructionError(
            "reduced fill is unbalanced: " + "; ".join(problems[:3]),
            framework=reduced.to_text(),
        )
    return fill


def realize_mixed(partition: RegionPartition) -> LatinSquare:
    """Realize a framework whose regions are all s x t or t x s.

    Raises:
        ClassificationMismatch: If the regions do not share one shape pair
        ConstructionError: If an intermediate invariant or the final
            verification fails
    """
    label = require_family(partition, "mixed", "mixed")
    s, t = label.shape
    counts = begin_counts(partition, s, t)
    reduced = reduce(partition, counts.k)
    logging.debug(
        f"Reduced order-{partition.order} framework by k={counts.k} "
        f"to {reduced.rows}x{reduced.cols}"
    )
    fill = mixed_fill(reduced, counts.s_prime, counts.t_prime, counts.k)
    square = realize_outline(fill.blow_up())
    return checked(square, partition, "mixed")
