"""Constructions for uniform frameworks and for t = c*s.

Both build an outline square in which every cell holds a full or partial
symbol set and hand it to realize_outline.
"""

from functools import lru_cache

import numpy as np

from ..framework import RegionPartition
from ..outline import Composition, LatinSquare, OutlineLatinSquare, realize_outline
from .common import checked, require_family


def uniform_outline(height: int, width: int) -> OutlineLatinSquare:
    """Outline with one cell per region, each holding all n symbols once."""
    n = height * width
    counts = np.ones((n // height, n // width, n), dtype=np.int64)
    return OutlineLatinSquare(
        Composition.uniform(height, n // height),
        Composition.uniform(width, n // width),
        Composition.ones(n),
        counts,
    )


def realize_uniform(partition: RegionPartition) -> LatinSquare:
    """Realize a framework whose regions are all h x w in one orientation.

    Raises:
        ClassificationMismatch: If the framework is not uniform
        ConstructionError: If the result fails verification
    """
    require_family(partition, "uniform", "uniform")
    box = partition.rect(1)
    square = realize_outline(uniform_outline(box.height, box.width))
    return checked(square, partition, "uniform")


def divides_outline(s: int, c: int) -> OutlineLatinSquare:
    """Blown-up cyclic outline for regions s x cs and cs x s.

    The t x t array (t = cs) holding ((i + j) mod c) + 1 at (i, j) has each
    of its c symbols once in every run of c consecutive cells of a row or
    column. Symbol x becomes the s*s symbols (x-1)s^2+1 .. x*s^2, one copy
    each, in an outline with blocks of s rows and s columns.
    """
    t = c * s
    n = s * t
    i, j = np.indices((t, t))
    cyclic = (i + j) % c
    counts = np.zeros((t, t, n), dtype=np.int64)
    for x in range(c):
        counts[cyclic == x, x * s * s : (x + 1) * s * s] = 1
    block = Composition.uniform(s, t)
    return OutlineLatinSquare(block, block, Composition.ones(n), counts)


@lru_cache(maxsize=None)
def divides_square(s: int, c: int) -> LatinSquare:
    """The square realizing every framework of s x cs and cs x s regions.

    The construction does not look at the layout, so one square serves all
    such frameworks.
    """
    return realize_outline(divides_outline(s, c))


def realize_divides(partition: RegionPartition) -> LatinSquare:
    """Realize a framework of s x t and t x s regions with t a multiple of s.

    Raises:
        ClassificationMismatch: If the regions do not have that shape
        ConstructionError: If the result fails verification
    """
    label = require_family(partition, "divides", "divides")
    s, t = label.shape
    return checked(divides_square(s, t // s), partition, "divides")
