"""Gerechte frameworks: data model, file formats, analysis and generation."""

from .analysis import (
    AlignmentClass,
    BeginCounts,
    ClassLabel,
    alignment_classes,
    begin_counts,
    classify,
    column_groups,
    reduce,
    refine,
)
from .generate import FAMILIES, generate
from .partition import (
    Rect,
    RegionPartition,
    Slice,
    parse_partition,
    serialize_partition,
)

__all__ = [
    "AlignmentClass",
    "BeginCounts",
    "ClassLabel",
    "FAMILIES",
    "Rect",
    "RegionPartition",
    "Slice",
    "alignment_classes",
    "begin_counts",
    "classify",
    "column_groups",
    "generate",
    "parse_partition",
    "reduce",
    "refine",
    "serialize_partition",
]
