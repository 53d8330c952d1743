"""Structural analysis of gerechte frameworks.

Classification into the realizable families, the reduced framework F/k,
the refined framework F', begin counts and alignment classes.

Families (most specific first):
    uniform  - every region is an s x t rectangle in the same orientation
    mixed    - every region is an s x t or a t x s rectangle
               (divides: additionally t is a multiple of s)
    columns  - every region is vertically aligned with all regions above
               and below it
    tree     - the cells below every region form complete regions
"""

import logging
from math import gcd
from typing import List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from ..errors import ConstructionError, FrameworkError
from .partition import RegionPartition, Rect


class ClassLabel(BaseModel):
    """Classification of a gerechte framework.

    Every implied family is flagged too: uniform frameworks are also mixed,
    columns frameworks are also trees.

    Attributes:
        rectangular (bool): Every region is a rectangle
        shape (Optional[Tuple[int, int]]): (s, t) with s <= t when every region
            is an s x t or t x s rectangle
        uniform (bool): All regions share one orientation
        mixed (bool): All regions are s x t or t x s
        divides (bool): Mixed with t a multiple of s
        columns (bool): Regions are arranged in columns
        tree (bool): Regions are arranged in a tree structure
    """

    model_config = ConfigDict(frozen=True)

    rectangular: bool
    shape: Optional[Tuple[int, int]] = None
    uniform: bool = False
    mixed: bool = False
    divides: bool = False
    columns: bool = False
    tree: bool = False

    @property
    def labels(self) -> List[str]:
        """All applicable family names, most specific first."""
        if not self.rectangular:
            return ["nonrectangular"]
        names = [
            name
            for name in ("uniform", "mixed", "divides", "columns", "tree")
            if getattr(self, name)
        ]
        return names or ["unsupported"]

    @property
    def primary(self) -> str:
        """The most specific family name."""
        return self.labels[0]

    def __str__(self):
        text = " ".join(self.labels)
        if self.shape:
            text += f" ({self.shape[0]}x{self.shape[1]})"
        return text


class BeginCounts(BaseModel):
    """Per-row and per-column counts of regions beginning there.

    Attributes:
        s (int): Height of the "s x t" regions
        t (int): Width of the "s x t" regions
        k (int): gcd(s, t)
        s_prime (int): s / k
        t_prime (int): t / k
        n (Tuple[int, ...]): s x t regions beginning in each row
        m (Tuple[int, ...]): t x s regions beginning in each row
        col_n (Tuple[int, ...]): s x t regions beginning in each column
        col_m (Tuple[int, ...]): t x s regions beginning in each column
    """

    model_config = ConfigDict(frozen=True)

    s: int
    t: int
    k: int
    s_prime: int
    t_prime: int
    n: Tuple[int, ...]
    m: Tuple[int, ...]
    col_n: Tuple[int, ...]
    col_m: Tuple[int, ...]


class AlignmentClass(BaseModel):
    """Set of mutually aligned regions.

    Attributes:
        orientation: "horizontal" (same begin row and height) or
            "vertical" (same begin column and width)
        start (int): 1-based shared begin row or begin column
        extent (int): Shared height or width
        members (Tuple[int, ...]): Region labels, left to right for
            horizontal classes and top to bottom for vertical ones
    """

    model_config = ConfigDict(frozen=True)

    orientation: Literal["horizontal", "vertical"]
    start: int
    extent: int
    members: Tuple[int, ...]


def _require_gerechte(partition: RegionPartition):
    if not partition.is_gerechte():
        raise FrameworkError(
            f"{partition.rows}x{partition.cols} partition with "
            f"{partition.num_regions} regions is not a gerechte framework"
        )


def _arranged_in_columns(rects: List[Rect], labels: np.ndarray) -> bool:
    for c in range(labels.shape[1]):
        spans = {(rects[v - 1].left, rects[v - 1].width) for v in np.unique(labels[:, c])}
        if len(spans) > 1:
            return False
    return True


def _arranged_in_tree(rects: List[Rect], labels: np.ndarray) -> bool:
    for rect in rects:
        below = labels[rect.bottom :, rect.left - 1 : rect.right]
        for other in np.unique(below).tolist():
            q = rects[other - 1]
            if q.left < rect.left or q.right > rect.right:
                return False
    return True


def classify(partition: RegionPartition) -> ClassLabel:
    """Classify a gerechte framework into the realizable families.

    Args:
        partition (RegionPartition): A gerechte framework

    Returns:
        ClassLabel: Every applicable family; non-rectangular frameworks get
            no further classification

    Raises:
        FrameworkError: If the partition is not a gerechte framework
    """
    _require_gerechte(partition)
    if not partition.is_rectangular():
        return ClassLabel(rectangular=False)

    rects = [partition.rect(v) for v in range(1, partition.num_regions + 1)]
    labels = partition.labels

    dims = {(r.height, r.width) for r in rects}
    pairs = {tuple(sorted(d)) for d in dims}
    shape = None
    uniform = mixed = divides = False
    if len(pairs) == 1:
        shape = next(iter(pairs))
        mixed = True
        uniform = len(dims) == 1
        divides = shape[1] % shape[0] == 0

    columns = _arranged_in_columns(rects, labels)
    tree = columns or _arranged_in_tree(rects, labels)
    return ClassLabel(
        rectangular=True,
        shape=shape,
        uniform=uniform,
        mixed=mixed,
        divides=divides,
        columns=columns,
        tree=tree,
    )


def reduce(partition: RegionPartition, k: int) -> RegionPartition:
    """Build the reduced framework F/k by amalgamating k x k squares.

    Cell (i, j) of the result carries the label of cell (ik, jk) of the
    input (0-based).

    Raises:
        FrameworkError: If the partition is not rectangular, or k does not
            divide the position and size of every region.
    """
    if k < 1:
        raise FrameworkError(f"reduction factor must be positive, got {k}")
    rects = partition.rects()
    for label, rect in rects.items():
        if any(v % k for v in (rect.top - 1, rect.left - 1, rect.height, rect.width)):
            raise FrameworkError(
                f"k={k} does not divide region {label} "
                f"({rect.height}x{rect.width} at row {rect.top}, column {rect.left})"
            )
    return RegionPartition(partition.labels[::k, ::k])


def refine(partition: RegionPartition) -> RegionPartition:
    """Build the refined framework F' of a tree-structured framework.

    Every vertical region boundary is extended upwards to the top of the
    grid, splitting the regions it crosses into vertical strips. The result
    need not be a gerechte framework.

    Raises:
        FrameworkError: If the partition is not a tree-structured gerechte
            framework
    """
    if not classify(partition).tree:
        raise FrameworkError("refined frameworks are only defined for tree structures")

    rects = partition.rects()
    refined = np.zeros_like(partition.labels)
    next_label = 1
    for label, rect in rects.items():
        cuts = set()
        for other in rects.values():
            if other.top > rect.bottom:
                cuts.update((other.left, other.right + 1))
        edges = sorted(c for c in cuts if rect.left < c <= rect.right) + [rect.right + 1]
        rows = slice(rect.top - 1, rect.bottom)
        start = rect.left
        for edge in edges:
            refined[rows, start - 1 : edge - 1] = next_label
            next_label += 1
            start = edge
    return RegionPartition(refined)


def begin_counts(partition: RegionPartition, s: int, t: int) -> BeginCounts:
    """Count the regions of each shape beginning in each row and column.

    The number of s x t regions beginning in any row is a multiple of
    s' = s / gcd(s, t). Exchanging s and t gives the same statement for the
    t x s regions (multiples of t'). Applied to the transposed framework, it
    gives the column analogues: s x t regions beginning in a column come in
    multiples of t', t x s regions in multiples of s'. All four are asserted.

    Raises:
        FrameworkError: If the framework has regions of other shapes
        ConstructionError: If a divisibility assertion fails
    """
    _require_gerechte(partition)
    rects = partition.rects().values()
    n = partition.order
    k = gcd(s, t)
    s_prime, t_prime = s // k, t // k

    row_n, row_m = [0] * n, [0] * n
    col_n, col_m = [0] * n, [0] * n
    for rect in rects:
        if (rect.height, rect.width) == (s, t):
            row_n[rect.top - 1] += 1
            col_n[rect.left - 1] += 1
        elif (rect.height, rect.width) == (t, s):
            row_m[rect.top - 1] += 1
            col_m[rect.left - 1] += 1
        else:
            raise FrameworkError(
                f"region {rect.height}x{rect.width} is neither {s}x{t} nor {t}x{s}"
            )

    checks = (
        ("rows", row_n, s_prime, f"{s}x{t}"),
        ("rows", row_m, t_prime, f"{t}x{s}"),
        ("columns", col_n, t_prime, f"{s}x{t}"),
        ("columns", col_m, s_prime, f"{t}x{s}"),
    )
    for axis, counts, divisor, shape in checks:
        for index, count in enumerate(counts):
            if count % divisor:
                raise ConstructionError(
                    f"{count} {shape} regions begin in {axis[:-1]} {index + 1}, "
                    f"not a multiple of {divisor}",
                    framework=partition.to_text(),
                )

    return BeginCounts(
        s=s,
        t=t,
        k=k,
        s_prime=s_prime,
        t_prime=t_prime,
        n=tuple(row_n),
        m=tuple(row_m),
        col_n=tuple(col_n),
        col_m=tuple(col_m),
    )


def alignment_classes(partition: RegionPartition) -> List[AlignmentClass]:
    """Partition the regions into horizontal and vertical alignment classes.

    Returns:
        list: Horizontal classes ordered by (begin row, height), followed by
            vertical classes ordered by (begin column, width)
    """
    rects = partition.rects()
    horizontal, vertical = {}, {}
    for label, rect in rects.items():
        horizontal.setdefault((rect.top, rect.height), []).append(label)
        vertical.setdefault((rect.left, rect.width), []).append(label)

    classes = [
        AlignmentClass(
            orientation="horizontal",
            start=start,
            extent=extent,
            members=tuple(sorted(members, key=lambda v: rects[v].left)),
        )
        for (start, extent), members in sorted(horizontal.items())
    ]
    classes += [
        AlignmentClass(
            orientation="vertical",
            start=start,
            extent=extent,
            members=tuple(sorted(members, key=lambda v: rects[v].top)),
        )
        for (start, extent), members in sorted(vertical.items())
    ]
    logging.debug(f"{len(horizontal)} horizontal and {len(vertical)} vertical classes")
    return classes


def column_groups(partition: RegionPartition) -> List[int]:
    """Widths of the maximal runs of columns lying in the same regions.

    Two adjacent columns belong to the same group when they are in the same
    region in every row.
    """
    labels = partition.labels
    widths = [1]
    for c in range(1, partition.cols):
        if np.array_equal(labels[:, c], labels[:, c - 1]):
            widths[-1] += 1
        else:
            widths.append(1)
    return widths
