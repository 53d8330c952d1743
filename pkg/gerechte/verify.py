"""Independent checkers, the brute-force realization oracle and the
exhaustive enumerator of rectangular frameworks.

Nothing here calls into the constructions: the checkers recount rows,
columns and regions from the raw arrays so a bug in a construction cannot
hide behind a shared helper.
"""

import enum
import logging
import time
from typing import Iterator, List, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from .errors import BudgetExceeded, ConstructionError, DimensionMismatch, FrameworkError
from .framework import RegionPartition
from .outline import LatinSquare, OutlineLatinSquare

DEFAULT_MAX_ASSIGNMENTS = 10_000_000
DEFAULT_MAX_ORDER = 9
DEFAULT_ENUMERATION_CAP = 6


class Violation(BaseModel):
    """A single failed check.

    Attributes:
        kind: "row", "column" or "region" for a symbol count other than one,
            "shape" for a cell holding a symbol outside 1..n, "cell" for an
            amalgamation mismatch
        index (int): 0-based row or column, region label, or flat cell index
        symbol (int): Offending symbol
        details (str): Human-readable description
    """

    model_config = ConfigDict(frozen=True)

    kind: Literal["row", "column", "region", "shape", "cell"]
    index: int
    symbol: int
    details: str = ""

    def __str__(self):
        return f"{self.kind} {self.index}: symbol {self.symbol} {self.details}".rstrip()


class VerificationReport(BaseModel):
    """Outcome of a check; ok exactly when there are no violations."""

    model_config = ConfigDict(frozen=True)

    violations: List[Violation] = []

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self, limit: int = 5) -> str:
        if self.ok:
            return "ok"
        lines = [str(v) for v in self.violations[:limit]]
        if len(self.violations) > limit:
            lines.append(f"... and {len(self.violations) - limit} more")
        return "\n".join(lines)


def _grid_of(square) -> np.ndarray:
    grid = np.asarray(getattr(square, "grid", square), dtype=np.int64)
    if grid.ndim != 2 or grid.shape[0] != grid.shape[1]:
        raise DimensionMismatch(f"square has shape {grid.shape}")
    return grid


def _shape_violations(grid: np.ndarray) -> List[Violation]:
    n = grid.shape[0]
    bad = np.argwhere((grid < 1) | (grid > n))
    return [
        Violation(
            kind="shape",
            index=int(r) * n + int(c),
            symbol=int(grid[r, c]),
            details=f"at cell ({r}, {c}) is outside 1..{n}",
        )
        for r, c in bad
    ]


def _line_violations(kind: str, lines, n: int, start: int = 0) -> List[Violation]:
    """Every symbol 1..n must occur exactly once in every line."""
    violations = []
    for index, line in enumerate(lines, start):
        counts = np.bincount(line[(line >= 1) & (line <= n)], minlength=n + 1)[1:]
        for symbol in np.flatnonzero(counts != 1):
            violations.append(
                Violation(
                    kind=kind,
                    index=index,
                    symbol=int(symbol) + 1,
                    details=f"occurs {counts[symbol]} times",
                )
            )
    return violations


def _region_violations(grid: np.ndarray, partition: RegionPartition) -> List[Violation]:
    if grid.shape != partition.labels.shape:
        raise DimensionMismatch(
            f"square is {grid.shape[0]}x{grid.shape[1]}, "
            f"framework is {partition.rows}x{partition.cols}"
        )
    n = grid.shape[0]
    labels = partition.labels
    regions = [grid[labels == label] for label in range(1, partition.num_regions + 1)]
    return _line_violations("region", regions, n, start=1)


def verify_latin(square) -> VerificationReport:
    """Check that every symbol occurs once in every row and column."""
    grid = _grid_of(square)
    n = grid.shape[0]
    return VerificationReport(
        violations=_shape_violations(grid)
        + _line_violations("row", grid, n)
        + _line_violations("column", grid.T, n)
    )


def verify_realization(square, partition: RegionPartition) -> VerificationReport:
    """Check that a square is latin and has every symbol once per region.

    Raises:
        DimensionMismatch: If the square and framework sizes differ
    """
    grid = _grid_of(square)
    n = grid.shape[0]
    return VerificationReport(
        violations=_shape_violations(grid)
        + _line_violations("row", grid, n)
        + _line_violations("column", grid.T, n)
        + _region_violations(grid, partition)
    )


def verify_row_realization(square, partition: RegionPartition) -> VerificationReport:
    """Check rows and regions only; columns may repeat symbols."""
    grid = _grid_of(square)
    n = grid.shape[0]
    return VerificationReport(
        violations=_shape_violations(grid)
        + _line_violations("row", grid, n)
        + _region_violations(grid, partition)
    )


def verify_amalgamation(square: LatinSquare, outline: OutlineLatinSquare) -> VerificationReport:
    """Recount the (S,T,U)-amalgamation of a square and compare it cell by cell.

    Raises:
        DimensionMismatch: If the outline's compositions do not sum to n
    """
    grid = _grid_of(square)
    n = grid.shape[0]
    if outline.n != n:
        raise DimensionMismatch(f"outline has n={outline.n}, square has order {n}")

    row_ends = np.cumsum(outline.S.parts)
    col_ends = np.cumsum(outline.T.parts)
    sym_ends = np.cumsum(outline.U.parts)
    counts = np.zeros_like(outline.counts)
    for r in range(n):
        i = int(np.searchsorted(row_ends, r, side="right"))
        for c in range(n):
            j = int(np.searchsorted(col_ends, c, side="right"))
            k = int(np.searchsorted(sym_ends, grid[r, c] - 1, side="right"))
            if k < counts.shape[2]:
                counts[i, j, k] += 1

    violations = []
    for i, j, k in np.argwhere(counts != outline.counts):
        violations.append(
            Violation(
                kind="cell",
                index=int(i) * counts.shape[1] + int(j),
                symbol=int(k) + 1,
                details=(
                    f"occurs {counts[i, j, k]} times in block ({i}, {j}), "
                    f"outline has {outline.counts[i, j, k]}"
                ),
            )
        )
    return VerificationReport(violations=_shape_violations(grid) + violations)


class SearchBudget(BaseModel):
    """Limits for the brute-force oracle.

    Attributes:
        max_assignments (int): Symbol placements tried before giving up
        max_order (int): Largest order the oracle accepts
        time_limit (Optional[float]): Wall-clock budget in seconds
    """

    model_config = ConfigDict(frozen=True)

    max_assignments: int = Field(DEFAULT_MAX_ASSIGNMENTS, gt=0)
    max_order: int = Field(DEFAULT_MAX_ORDER, gt=0)
    time_limit: Optional[float] = Field(None, gt=0)


class SearchStatus(str, enum.Enum):
    REALIZED = "realized"
    UNREALIZABLE = "unrealizable"
    BUDGET_EXCEEDED = "budget_exceeded"


class SearchResult(BaseModel):
    """Outcome of brute_force_realize.

    square is set only for REALIZED. UNREALIZABLE is reported only after the
    search space is exhausted; running out of budget is never reported as
    UNREALIZABLE.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    status: SearchStatus
    square: Optional[LatinSquare] = None
    assignments: int = 0
    reason: Optional[str] = None


class _OutOfBudget(Exception):
    pass


def brute_force_realize(
    partition: RegionPartition, budget: Optional[SearchBudget] = None
) -> SearchResult:
    """Search for a realization by backtracking.

    The next cell is always one with the fewest candidate symbols; the
    candidates of a cell are the symbols missing from its row, column and
    region, kept as bitmasks.

    Args:
        partition (RegionPartition): A gerechte framework
        budget (SearchBudget, optional): Search limits

    Returns:
        SearchResult: The square, a proof of unrealizability, or a budget stop

    Raises:
        FrameworkError: If the partition is not a gerechte framework
    """
    budget = budget or SearchBudget()
    if not partition.is_gerechte():
        raise FrameworkError("brute force needs a gerechte framework")
    n = partition.order
    if n > budget.max_order:
        return SearchResult(
            status=SearchStatus.BUDGET_EXCEEDED,
            reason=f"order {n} is above the brute-force limit {budget.max_order}",
        )

    region = (partition.labels - 1).tolist()
    full = (1 << n) - 1
    rows, cols, regs = [0] * n, [0] * n, [0] * n
    grid = [[0] * n for _ in range(n)]
    assignments = 0
    deadline = time.monotonic() + budget.time_limit if budget.time_limit else None

    def search(empty) -> bool:
        nonlocal assignments
        if not empty:
            return True
        best, best_mask, best_count = 0, 0, n + 1
        for index, (r, c) in enumerate(empty):
            mask = full & ~(rows[r] | cols[c] | regs[region[r][c]])
            count = bin(mask).count("1")
            if count < best_count:
                best, best_mask, best_count = index, mask, count
                if count <= 1:
                    break
        if best_count == 0:
            return False

        r, c = empty[best]
        g = region[r][c]
        rest = empty[:best] + empty[best + 1 :]
        mask = best_mask
        while mask:
            bit = mask & -mask
            mask ^= bit
            assignments += 1
            if assignments > budget.max_assignments:
                raise _OutOfBudget(f"more than {budget.max_assignments} assignments")
            if deadline is not None and assignments % 1024 == 0 and time.monotonic() > deadline:
                raise _OutOfBudget(f"time limit of {budget.time_limit}s reached")
            rows[r] |= bit
            cols[c] |= bit
            regs[g] |= bit
            grid[r][c] = bit.bit_length()
            if search(rest):
                return True
            rows[r] ^= bit
            cols[c] ^= bit
            regs[g] ^= bit
            grid[r][c] = 0
        return False

    try:
        found = search([(r, c) for r in range(n) for c in range(n)])
    except _OutOfBudget as e:
        logging.info(f"Brute force stopped after {assignments} assignments: {e}")
        return SearchResult(
            status=SearchStatus.BUDGET_EXCEEDED, assignments=assignments, reason=str(e)
        )

    if not found:
        return SearchResult(status=SearchStatus.UNREALIZABLE, assignments=assignments)
    square = LatinSquare(grid)
    report = verify_realization(square, partition)
    if not report.ok:
        raise ConstructionError(
            f"brute force produced an invalid square:\n{report.summary()}",
            framework=partition.to_text(),
        )
    return SearchResult(status=SearchStatus.REALIZED, square=square, assignments=assignments)


def _divisor_shapes(n: int, reverse: bool):
    shapes = [(h, n // h) for h in range(1, n + 1) if n % h == 0]
    return shapes[::-1] if reverse else shapes


def enumerate_rect_frameworks(
    n: int,
    cap: int = DEFAULT_ENUMERATION_CAP,
    allow_large: bool = False,
    reverse: bool = False,
) -> Iterator[RegionPartition]:
    """Yield every partition of the n x n grid into n rectangles of area n.

    The first free cell in row-major order is covered next, trying the
    shapes h x (n/h) by increasing h (decreasing with reverse=True). Each
    partition is produced exactly once.

    Raises:
        BudgetExceeded: If n > cap and allow_large is not set
    """
    if n < 1:
        raise FrameworkError(f"order must be positive, got {n}")
    if n > cap and not allow_large:
        raise BudgetExceeded(f"enumeration of order {n} is above the cap {cap}")

    shapes = _divisor_shapes(n, reverse)
    labels = np.zeros((n, n), dtype=np.int64)
    flat = labels.ravel()

    def tile(start: int, label: int):
        free = np.flatnonzero(flat[start:] == 0)
        if free.size == 0:
            yield RegionPartition(labels)
            return
        position = start + int(free[0])
        r, c = divmod(position, n)
        for h, w in shapes:
            if r + h > n or c + w > n:
                continue
            block = labels[r : r + h, c : c + w]
            if block.any():
                continue
            block[:] = label
            yield from tile(position, label + 1)
            block[:] = 0

    yield from tile(0, 1)


def count_rect_frameworks(n: int, reverse: bool = False, **kwargs) -> int:
    """Count the rectangular frameworks of order n."""
    return sum(1 for _ in enumerate_rect_frameworks(n, reverse=reverse, **kwargs))
