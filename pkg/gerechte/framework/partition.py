"""Region partitions of a rectangular grid and their text formats.

A gerechte framework of order n is a partition of the n x n grid into n
regions of n cells each. The same data structure also holds reduced
frameworks (F/k), refined frameworks (F') and arbitrary label grids, which
need not be gerechte.

File formats:
    Grid format: a header line holding n (or "rows cols"), followed by one
    line of whitespace-separated integer labels per grid row.

    Rect-list format: a header line "rects n", followed by n lines
    "top left height width" (1-based, inclusive), one per region.

    Lines starting with '#' are comments in both formats.

Region labels are canonicalized on construction: labels are renumbered
1..R in order of first occurrence in a row-major scan, so two partitions
with the same regions compare (and serialize) equal.
"""

import re
from functools import cached_property
from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from ..errors import FrameworkError, ParseError


class Rect(BaseModel):
    """Axis-aligned rectangle of grid cells.

    Attributes:
        top (int): 1-based first row
        left (int): 1-based first column
        height (int): Number of rows
        width (int): Number of columns
    """

    model_config = ConfigDict(frozen=True)

    top: int
    left: int
    height: int
    width: int

    @property
    def bottom(self) -> int:
        """1-based last row (inclusive)."""
        return self.top + self.height - 1

    @property
    def right(self) -> int:
        """1-based last column (inclusive)."""
        return self.left + self.width - 1

    @property
    def area(self) -> int:
        return self.height * self.width

    def index(self) -> Tuple[slice, slice]:
        """Return the numpy index selecting this rectangle's cells."""
        return (
            slice(self.top - 1, self.top - 1 + self.height),
            slice(self.left - 1, self.left - 1 + self.width),
        )


class Slice(BaseModel):
    """Maximal set of cells lying in the same row and the same region.

    Attributes:
        row (int): 0-based row index
        region (int): Region label
        columns (Tuple[int, ...]): 0-based column indices, left to right
    """

    model_config = ConfigDict(frozen=True)

    row: int
    region: int
    columns: Tuple[int, ...]

    @property
    def cells(self) -> List[Tuple[int, int]]:
        return [(self.row, c) for c in self.columns]


def _canonical_labels(labels: np.ndarray) -> np.ndarray:
    """Renumber labels 1..R in order of first row-major occurrence."""
    flat = labels.ravel()
    distinct, first = np.unique(flat, return_index=True)
    order = np.argsort(first, kind="stable")
    mapping = np.zeros(distinct[-1] + 1, dtype=np.int64)
    mapping[distinct[order]] = np.arange(1, len(distinct) + 1)
    return mapping[labels]


class RegionPartition:
    """Labelled partition of a rows x cols grid into regions 1..R.

    Instances are immutable: the label array is read-only and every
    operation returns a new partition.

    Args:
        labels: 2-D array-like of positive integer region labels. Every label
            in 1..max(labels) must occur at least once.

    Raises:
        FrameworkError: If the labels are not a non-empty 2-D grid of
            positive integers covering 1..R.
    """

    def __init__(self, labels):
        try:
            array = np.array(labels, dtype=np.int64)
        except (TypeError, ValueError) as e:
            raise FrameworkError(f"labels are not an integer grid: {e}")
        if array.ndim != 2 or array.size == 0:
            raise FrameworkError("labels must form a non-empty 2-D grid")
        if array.min() < 1:
            raise FrameworkError("region labels must be positive")
        counts = np.bincount(array.ravel())
        missing = np.flatnonzero(counts[1:] == 0)
        if missing.size:
            raise FrameworkError(f"label {missing[0] + 1} does not occur")

        self._labels = _canonical_labels(array)
        self._labels.setflags(write=False)

    @property
    def labels(self) -> np.ndarray:
        """Read-only array of canonical region labels."""
        return self._labels

    @property
    def rows(self) -> int:
        return self._labels.shape[0]

    @property
    def cols(self) -> int:
        return self._labels.shape[1]

    @property
    def num_regions(self) -> int:
        return int(self._labels.max())

    @property
    def order(self) -> int:
        """Grid side length; only meaningful for square grids."""
        if self.rows != self.cols:
            raise FrameworkError(f"{self.rows}x{self.cols} grid has no order")
        return self.rows

    @cached_property
    def region_sizes(self) -> np.ndarray:
        """Cell count of each region, indexed by label - 1."""
        return np.bincount(self._labels.ravel())[1:]

    def is_gerechte(self) -> bool:
        """Whether rows = cols = R and every region has exactly R cells."""
        n = self.num_regions
        return self.rows == n and self.cols == n and bool(np.all(self.region_sizes == n))

    @cached_property
    def _bounding_boxes(self) -> List[Rect]:
        boxes = []
        for label in range(1, self.num_regions + 1):
            rows, cols = np.nonzero(self._labels == label)
            boxes.append(
                Rect(
                    top=int(rows.min()) + 1,
                    left=int(cols.min()) + 1,
                    height=int(rows.max() - rows.min()) + 1,
                    width=int(cols.max() - cols.min()) + 1,
                )
            )
        return boxes

    def is_rectangular(self) -> bool:
        """Whether every region equals the bounding box of its cells."""
        return all(
            box.area == size for box, size in zip(self._bounding_boxes, self.region_sizes)
        )

    def rect(self, region: int) -> Optional[Rect]:
        """Return the rectangle of a region, or None if it is not a rectangle."""
        box = self._bounding_boxes[region - 1]
        return box if box.area == self.region_sizes[region - 1] else None

    def rects(self) -> Dict[int, Rect]:
        """Return the rectangle of every region keyed by label.

        Raises:
            FrameworkError: If some region is not a rectangle.
        """
        if not self.is_rectangular():
            raise FrameworkError("framework has non-rectangular regions")
        return {label: box for label, box in enumerate(self._bounding_boxes, 1)}

    def cells(self, region: int) -> List[Tuple[int, int]]:
        """Return the 0-based cells of a region in row-major order."""
        rows, cols = np.nonzero(self._labels == region)
        return list(zip(rows.tolist(), cols.tolist()))

    def slices(self) -> List[Slice]:
        """Return all slices in row-major order of their first cell."""
        result = []
        for r in range(self.rows):
            runs: Dict[int, List[int]] = {}
            for c, label in enumerate(self._labels[r].tolist()):
                runs.setdefault(label, []).append(c)
            result.extend(
                Slice(row=r, region=label, columns=tuple(columns))
                for label, columns in runs.items()
            )
        return result

    def transpose(self) -> "RegionPartition":
        return RegionPartition(self._labels.T)

    def to_text(self) -> str:
        return serialize_partition(self)

    def __eq__(self, other):
        if not isinstance(other, RegionPartition):
            return NotImplemented
        return self._labels.shape == other._labels.shape and bool(
            np.array_equal(self._labels, other._labels)
        )

    def __hash__(self):
        return hash((self._labels.shape, self._labels.tobytes()))

    def __repr__(self):
        return f"RegionPartition({self.rows}x{self.cols}, regions={self.num_regions})"


def _content_lines(text: str) -> List[Tuple[int, str]]:
    """Return (line number, line) pairs that are neither blank nor comments."""
    return [
        (number, line)
        for number, line in enumerate(text.splitlines(), 1)
        if line.strip() and not line.lstrip().startswith("#")
    ]


def _integers(number: int, line: str) -> List[int]:
    """Parse every token of a line as an integer, reporting its position."""
    values = []
    for match in re.finditer(r"\S+", line):
        try:
            values.append(int(match.group()))
        except ValueError:
            raise ParseError(
                f"expected an integer, found {match.group()!r}",
                line=number,
                column=match.start() + 1,
            )
    return values


def _token_column(line: str, position: int) -> int:
    """1-based column of the position-th token of a line."""
    return [m.start() + 1 for m in re.finditer(r"\S+", line)][position]


def parse_partition(text: str) -> RegionPartition:
    """Parse a framework file in grid or rect-list format.

    Args:
        text (str): File contents

    Returns:
        RegionPartition: The parsed (canonicalized) partition

    Raises:
        ParseError: On syntax errors, labels out of range, labels that never
            occur, or overlapping/uncovering rectangles.
    """
    lines = _content_lines(text)
    if not lines:
        raise ParseError("framework file is empty")
    number, header = lines[0]
    if header.split()[0] == "rects":
        return _parse_rects(lines)
    return _parse_grid(lines)


def _parse_grid(lines: List[Tuple[int, str]]) -> RegionPartition:
    number, header = lines[0]
    dims = _integers(number, header)
    if len(dims) not in (1, 2) or min(dims) < 1:
        raise ParseError("header must be 'n' or 'rows cols' with positive sizes", line=number)
    rows, cols = (dims[0], dims[0]) if len(dims) == 1 else dims

    body = lines[1:]
    if len(body) != rows:
        where = body[rows][0] if len(body) > rows else None
        raise ParseError(f"expected {rows} grid rows, found {len(body)}", line=where)

    labels = np.zeros((rows, cols), dtype=np.int64)
    for r, (number, line) in enumerate(body):
        values = _integers(number, line)
        if len(values) != cols:
            raise ParseError(f"expected {cols} labels, found {len(values)}", line=number)
        for c, value in enumerate(values):
            if not 1 <= value <= rows * cols:
                raise ParseError(
                    f"label {value} out of range 1..{rows * cols}",
                    line=number,
                    column=_token_column(line, c),
                )
        labels[r] = values

    counts = np.bincount(labels.ravel())
    missing = np.flatnonzero(counts[1:] == 0)
    if missing.size:
        raise ParseError(
            f"label count mismatch: labels run up to {labels.max()} but label "
            f"{missing[0] + 1} never occurs"
        )
    return RegionPartition(labels)


def _parse_rects(lines: List[Tuple[int, str]]) -> RegionPartition:
    number, header = lines[0]
    tokens = header.split()
    if len(tokens) != 2:
        raise ParseError("header must be 'rects n'", line=number)
    try:
        n = int(tokens[1])
    except ValueError:
        raise ParseError(
            f"expected an integer, found {tokens[1]!r}",
            line=number,
            column=_token_column(header, 1),
        )
    if n < 1:
        raise ParseError("order must be positive", line=number)

    body = lines[1:]
    if len(body) != n:
        raise ParseError(f"expected {n} rectangles, found {len(body)}")

    labels = np.zeros((n, n), dtype=np.int64)
    for label, (number, line) in enumerate(body, 1):
        values = _integers(number, line)
        if len(values) != 4:
            raise ParseError("expected 'top left height width'", line=number)
        top, left, height, width = values
        if height < 1 or width < 1:
            raise ParseError("rectangle sizes must be positive", line=number)
        if top < 1 or left < 1 or top + height - 1 > n or left + width - 1 > n:
            raise ParseError(f"rectangle {label} leaves the {n}x{n} grid", line=number)
        block = labels[top - 1 : top - 1 + height, left - 1 : left - 1 + width]
        if block.any():
            other = int(block[block > 0][0])
            raise ParseError(f"rectangle {label} overlaps rectangle {other}", line=number)
        block[:] = label

    gaps = np.argwhere(labels == 0)
    if gaps.size:
        r, c = gaps[0]
        raise ParseError(f"cell ({r + 1}, {c + 1}) is not covered by any rectangle")
    return RegionPartition(labels)


def serialize_partition(partition: RegionPartition) -> str:
    """Serialize a partition in canonical grid format.

    The header is n for square grids and "rows cols" otherwise; labels are
    separated by single spaces and the text ends with a newline.
    """
    if partition.rows == partition.cols:
        header = str(partition.rows)
    else:
        header = f"{partition.rows} {partition.cols}"
    body = [" ".join(str(v) for v in row) for row in partition.labels.tolist()]
    return "\n".join([header, *body]) + "\n"
