"""Outline and amalgamated latin squares.

Given compositions S = (p_1..p_s), T = (q_1..q_t) and U = (r_1..r_u) of n,
the (S,T,U)-amalgamation of a latin square L of order n merges the rows of
L into blocks of sizes p_i, its columns into blocks of sizes q_j and its
symbols into groups of sizes r_k. Cell (i, j) of the result is the multiset
of group indices of the symbols in row block i and column block j.

An (S,T,U)-outline latin square is any s x t array of symbol multisets with
    (i)   symbol k occurring p_i * r_k times in row i,
    (ii)  symbol k occurring q_j * r_k times in column j,
    (iii) cell (i, j) holding p_i * q_j symbols.

Every outline latin square is an amalgamated one: realize_outline rebuilds
a latin square by splitting rows, then columns, then symbols, each split
driven by an equitable edge colouring.

Cell multisets are stored densely as an (s, t, u) array of counts.
"""

import logging
import re
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from .errors import OutlineError, ParseError
from .graph import BipartiteMultigraph, equitable_edge_colouring


class Composition:
    """Ordered tuple of positive integers summing to n.

    Raises:
        OutlineError: If the tuple is empty or holds a non-positive part
    """

    def __init__(self, parts):
        self.parts = tuple(int(p) for p in parts)
        if not self.parts or min(self.parts) < 1:
            raise OutlineError(f"{self.parts} is not a composition")

    @classmethod
    def ones(cls, n: int) -> "Composition":
        return cls([1] * n)

    @classmethod
    def uniform(cls, part: int, count: int) -> "Composition":
        return cls([part] * count)

    @property
    def n(self) -> int:
        return sum(self.parts)

    def is_unit(self) -> bool:
        return all(p == 1 for p in self.parts)

    def block_index(self) -> np.ndarray:
        """Block number of each of the n underlying indices."""
        return np.repeat(np.arange(len(self.parts)), self.parts)

    def split(self, index: int) -> "Composition":
        """Replace part `index` by that many ones."""
        p = self.parts
        return Composition(p[:index] + (1,) * p[index] + p[index + 1 :])

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, index):
        return self.parts[index]

    def __iter__(self):
        return iter(self.parts)

    def __eq__(self, other):
        return isinstance(other, Composition) and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return f"Composition{self.parts}"


class LatinSquare:
    """Square array of symbols 1..n.

    The latin property is not enforced on construction, so candidate
    squares read from files can be checked and reported on; is_latin()
    tests it.

    Raises:
        ValueError: If the grid is not a non-empty square of integers
    """

    def __init__(self, grid):
        array = np.array(grid, dtype=np.int64)
        if array.ndim != 2 or array.shape[0] != array.shape[1] or array.size == 0:
            raise ValueError(f"a square needs an n x n grid, got shape {array.shape}")
        array.setflags(write=False)
        self.grid = array

    @property
    def n(self) -> int:
        return self.grid.shape[0]

    def is_latin(self) -> bool:
        target = np.arange(1, self.n + 1)
        return all(
            np.array_equal(np.sort(line), target)
            for line in (*self.grid, *self.grid.T)
        )

    def to_text(self) -> str:
        return format_square(self)

    def __eq__(self, other):
        if not isinstance(other, LatinSquare):
            return NotImplemented
        return self.grid.shape == other.grid.shape and bool(np.array_equal(self.grid, other.grid))

    def __hash__(self):
        return hash(self.grid.tobytes())

    def __repr__(self):
        return f"LatinSquare(n={self.n})"


def parse_square(text: str) -> LatinSquare:
    """Parse a square: n lines of n whitespace-separated integers.

    Raises:
        ParseError: On non-integer tokens or ragged rows
    """
    rows = []
    for number, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
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
        rows.append((number, values))
    if not rows:
        raise ParseError("square file is empty")
    n = len(rows)
    for number, values in rows:
        if len(values) != n:
            raise ParseError(f"expected {n} symbols, found {len(values)}", line=number)
    return LatinSquare([values for _, values in rows])


def format_square(square: LatinSquare) -> str:
    """Serialize a square: space-separated rows with a trailing newline."""
    return "\n".join(" ".join(str(v) for v in row) for row in square.grid.tolist()) + "\n"


class OutlineReport(BaseModel):
    """Result of checking conditions (i)-(iii) of an outline square.

    Attributes:
        ok (bool): All conditions hold
        condition (Optional[str]): "i", "ii", "iii" or "shape" for the first
            violation found
        row (Optional[int]): 0-based row of the violation
        column (Optional[int]): 0-based column of the violation
        symbol (Optional[int]): 1-based symbol of the violation
        expected (Optional[int]): Required count
        found (Optional[int]): Actual count
    """

    model_config = ConfigDict(frozen=True)

    ok: bool
    condition: Optional[str] = None
    row: Optional[int] = None
    column: Optional[int] = None
    symbol: Optional[int] = None
    expected: Optional[int] = None
    found: Optional[int] = None

    @property
    def message(self) -> str:
        if self.ok:
            return "ok"
        where = ", ".join(
            f"{name} {value}"
            for name, value in (("row", self.row), ("column", self.column), ("symbol", self.symbol))
            if value is not None
        )
        return (
            f"condition ({self.condition}) violated at {where}: "
            f"expected {self.expected}, found {self.found}"
        )


class OutlineLatinSquare:
    """(S,T,U)-outline latin square stored as an (s, t, u) count array.

    counts[i, j, k] is the number of copies of symbol k + 1 in cell (i, j).
    Conditions (i)-(iii) are not enforced here; validate_outline checks them.

    Raises:
        OutlineError: If the compositions disagree on n or the count array
            has the wrong shape or negative entries
    """

    def __init__(self, S: Composition, T: Composition, U: Composition, counts):
        if not S.n == T.n == U.n:
            raise OutlineError(f"compositions sum to {S.n}, {T.n} and {U.n}")
        array = np.array(counts, dtype=np.int64)
        if array.shape != (len(S), len(T), len(U)):
            raise OutlineError(
                f"count array has shape {array.shape}, expected {(len(S), len(T), len(U))}"
            )
        if array.size and array.min() < 0:
            raise OutlineError("symbol counts must be non-negative")
        array.setflags(write=False)
        self.S, self.T, self.U = S, T, U
        self.counts = array

    @property
    def n(self) -> int:
        return self.S.n

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.S), len(self.T)

    def transpose(self) -> "OutlineLatinSquare":
        """Exchange the roles of rows and columns."""
        return OutlineLatinSquare(self.T, self.S, self.U, self.counts.transpose(1, 0, 2))

    def is_latin(self) -> bool:
        return self.S.is_unit() and self.T.is_unit() and self.U.is_unit()

    def to_latin_square(self) -> LatinSquare:
        """Read off the latin square of an outline with unit compositions."""
        if not self.is_latin() or np.any(self.counts.sum(axis=2) != 1):
            raise OutlineError("outline square is not a latin square yet")
        return LatinSquare(self.counts.argmax(axis=2) + 1)

    def describe(self) -> str:
        """Debug text: one line per row, each cell as its count vector."""
        lines = [f"S={self.S.parts} T={self.T.parts} U={self.U.parts}"]
        for row in self.counts.tolist():
            lines.append(" | ".join(" ".join(str(c) for c in cell) for cell in row))
        return "\n".join(lines)

    def __eq__(self, other):
        if not isinstance(other, OutlineLatinSquare):
            return NotImplemented
        return (
            (self.S, self.T, self.U) == (other.S, other.T, other.U)
            and bool(np.array_equal(self.counts, other.counts))
        )

    def __repr__(self):
        return f"OutlineLatinSquare({len(self.S)}x{len(self.T)}, symbols={len(self.U)}, n={self.n})"


def amalgamate(
    square: LatinSquare, S: Composition, T: Composition, U: Composition
) -> OutlineLatinSquare:
    """Compute the (S,T,U)-amalgamation of a latin square.

    Raises:
        OutlineError: If a composition does not sum to the square's order
    """
    n = square.n
    if not S.n == T.n == U.n == n:
        raise OutlineError(f"compositions sum to {S.n}, {T.n}, {U.n}; square has order {n}")
    rows = np.broadcast_to(S.block_index()[:, None], (n, n))
    cols = np.broadcast_to(T.block_index()[None, :], (n, n))
    groups = U.block_index()[square.grid - 1]
    counts = np.zeros((len(S), len(T), len(U)), dtype=np.int64)
    np.add.at(counts, (rows, cols, groups), 1)
    return OutlineLatinSquare(S, T, U, counts)


def validate_outline(outline: OutlineLatinSquare) -> OutlineReport:
    """Check conditions (iii), (i) and (ii), reporting the first violation."""
    S = np.array(outline.S.parts)
    T = np.array(outline.T.parts)
    U = np.array(outline.U.parts)
    counts = outline.counts

    sizes = counts.sum(axis=2)
    expected = np.outer(S, T)
    bad = np.argwhere(sizes != expected)
    if bad.size:
        i, j = bad[0]
        return OutlineReport(
            ok=False, condition="iii", row=int(i), column=int(j),
            expected=int(expected[i, j]), found=int(sizes[i, j]),
        )

    for condition, totals, parts, axis_name in (
        ("i", counts.sum(axis=1), S, "row"),
        ("ii", counts.sum(axis=0), T, "column"),
    ):
        expected = np.outer(parts, U)
        bad = np.argwhere(totals != expected)
        if bad.size:
            index, k = bad[0]
            return OutlineReport(
                ok=False, condition=condition, symbol=int(k) + 1,
                expected=int(expected[index, k]), found=int(totals[index, k]),
                **{axis_name: int(index)},
            )
    return OutlineReport(ok=True)


def split_row(outline: OutlineLatinSquare, i: int) -> OutlineLatinSquare:
    """Split row i (with p_i >= 2) into p_i rows of weight 1.

    The columns x symbols multigraph of row i, with one edge per symbol
    copy, is given an equitable p_i-colouring; new row c holds the copies
    coloured c. The new rows take row i's place, in colour order.

    Raises:
        OutlineError: If p_i < 2
    """
    p = outline.S[i]
    if p < 2:
        raise OutlineError(f"row {i} has weight {p}; only rows of weight >= 2 split")
    row = outline.counts[i]
    t, u = row.shape
    edges = [(j, k) for j in range(t) for k in range(u) for _ in range(row[j, k])]
    colouring = equitable_edge_colouring(BipartiteMultigraph(t, u, edges), p)

    new_rows = np.zeros((p, t, u), dtype=np.int64)
    for (j, k), colour in zip(edges, colouring.assignment):
        new_rows[colour - 1, j, k] += 1
    counts = np.concatenate([outline.counts[:i], new_rows, outline.counts[i + 1 :]])
    return OutlineLatinSquare(outline.S.split(i), outline.T, outline.U, counts)


def split_column(outline: OutlineLatinSquare, j: int) -> OutlineLatinSquare:
    """Split column j by splitting row j of the transpose."""
    return split_row(outline.transpose(), j).transpose()


def split_symbol(outline: OutlineLatinSquare, k: int) -> OutlineLatinSquare:
    """Split symbol group k (with r_k >= 2) into r_k symbols of weight 1.

    The rows x columns multigraph with one edge per copy of symbol k has
    degrees p_i * r_k and q_j * r_k; an equitable r_k-colouring relabels
    each copy by its colour.

    Raises:
        OutlineError: If r_k < 2
    """
    r = outline.U[k]
    if r < 2:
        raise OutlineError(f"symbol {k + 1} has weight {r}; only symbols of weight >= 2 split")
    layer = outline.counts[:, :, k]
    s, t = layer.shape
    edges = [(i, j) for i in range(s) for j in range(t) for _ in range(layer[i, j])]
    colouring = equitable_edge_colouring(BipartiteMultigraph(s, t, edges), r)

    new_layers = np.zeros((s, t, r), dtype=np.int64)
    for (i, j), colour in zip(edges, colouring.assignment):
        new_layers[i, j, colour - 1] += 1
    counts = np.concatenate(
        [outline.counts[:, :, :k], new_layers, outline.counts[:, :, k + 1 :]], axis=2
    )
    return OutlineLatinSquare(outline.S, outline.T, outline.U.split(k), counts)


def realize_outline(outline: OutlineLatinSquare) -> LatinSquare:
    """Find a latin square whose (S,T,U)-amalgamation is the given outline.

    Rows are split left to right, then columns, then symbols in increasing
    order, after which every composition is all ones.

    Raises:
        OutlineError: If the outline violates conditions (i)-(iii)
    """
    report = validate_outline(outline)
    if not report.ok:
        raise OutlineError(f"not an outline latin square: {report.message}")

    outline = _split_all(outline, "row", lambda m: m.S, split_row)
    outline = _split_all(outline, "column", lambda m: m.T, split_column)
    outline = _split_all(outline, "symbol", lambda m: m.U, split_symbol)
    return outline.to_latin_square()


def _split_all(outline: OutlineLatinSquare, name: str, parts_of, split) -> OutlineLatinSquare:
    index = splits = 0
    while index < len(parts_of(outline)):
        weight = parts_of(outline)[index]
        if weight > 1:
            outline = split(outline, index)
            splits += 1
        index += weight
    logging.debug(f"Split {splits} {name} blocks, outline now {outline!r}")
    return outline
