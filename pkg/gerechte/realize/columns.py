"""Construction for frameworks whose regions are arranged in columns."""

import logging

from ..errors import ConstructionError
from ..framework import RegionPartition, column_groups
from ..outline import LatinSquare, OutlineLatinSquare, realize_outline, validate_outline
from .common import checked, require_family
from .rows import row_realization, strip_outline


def columns_outline(partition: RegionPartition) -> OutlineLatinSquare:
    """Merge the column groups of a row-realization into an outline.

    Every region of a columns framework spans whole column groups, so the
    strip of width w_j holds each symbol w_j times.

    Raises:
        ClassificationMismatch: If the framework is not arranged in columns
        ConstructionError: If the strips are not balanced
    """
    require_family(partition, "columns", "columns")
    outline = strip_outline(row_realization(partition), column_groups(partition))
    report = validate_outline(outline)
    if not report.ok:
        raise ConstructionError(
            f"column strips do not form an outline square: {report.message}",
            framework=partition.to_text(),
        )
    logging.debug(f"Columns outline has {outline.shape[0]} rows and {outline.shape[1]} columns")
    return outline


def realize_columns(partition: RegionPartition) -> LatinSquare:
    """Realize a framework whose regions are arranged in columns.

    Raises:
        ClassificationMismatch: If the framework is not arranged in columns
        ConstructionError: If an intermediate check or the final
            verification fails
    """
    square = realize_outline(columns_outline(partition))
    return checked(square, partition, "columns")
