"""Utilities for drawing frameworks and their realizations."""

import io
from typing import Optional

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .errors import DimensionMismatch  # noqa: E402
from .framework import RegionPartition  # noqa: E402
from .outline import LatinSquare  # noqa: E402


def render_framework(
    partition: RegionPartition, square: Optional[LatinSquare] = None, cell_size: float = 0.5
) -> io.BytesIO:
    """Draw a framework as a PNG image.

    Cells get thin grid lines and region boundaries heavy ones. When a
    square is given its symbols are written into the cells.

    Args:
        partition: The framework to draw
        square: Optional realization whose symbols are shown
        cell_size: Edge length of a cell in inches

    Returns:
        io.BytesIO: Buffer holding the PNG image, positioned at the start

    Raises:
        DimensionMismatch: If the square and framework sizes differ
    """
    rows, cols = partition.rows, partition.cols
    if square is not None and square.grid.shape != (rows, cols):
        raise DimensionMismatch(
            f"square is {square.n}x{square.n}, framework is {rows}x{cols}"
        )
    labels = partition.labels

    fig, ax = plt.subplots(figsize=(max(1.0, cols * cell_size), max(1.0, rows * cell_size)))
    ax.set_xlim(0, cols)
    ax.set_ylim(rows, 0)
    ax.set_aspect("equal")
    ax.axis("off")

    # Horizontal edges, between row r-1 and row r
    for r in range(rows + 1):
        for c in range(cols):
            heavy = r in (0, rows) or labels[r - 1, c] != labels[r, c]
            ax.plot([c, c + 1], [r, r], color="black", linewidth=2.5 if heavy else 0.5)
    # Vertical edges, between column c-1 and column c
    for c in range(cols + 1):
        for r in range(rows):
            heavy = c in (0, cols) or labels[r, c - 1] != labels[r, c]
            ax.plot([c, c], [r, r + 1], color="black", linewidth=2.5 if heavy else 0.5)

    if square is not None:
        fontsize = max(4, min(14, int(200 / max(rows, 1))))
        for (r, c), symbol in zip(
            ((r, c) for r in range(rows) for c in range(cols)), square.grid.ravel().tolist()
        ):
            ax.text(c + 0.5, r + 0.5, str(symbol), ha="center", va="center", fontsize=fontsize)

    plt.tight_layout()

    # Save to bytes buffer
    buf = io.BytesIO()
    fig.savefig(buf, format="png")
    buf.seek(0)
    plt.close(fig)
    return buf
