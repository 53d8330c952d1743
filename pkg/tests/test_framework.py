import numpy as np
import pytest

from gerechte.errors import FrameworkError, ParseError
from gerechte.framework import (
    RegionPartition,
    alignment_classes,
    begin_counts,
    classify,
    column_groups,
    parse_partition,
    reduce,
    refine,
    serialize_partition,
)

from .conftest import broken_diagonals


def test_parse_grid_canonicalizes_labels():
    partition = parse_partition("2\n2 2\n1 1\n")
    assert partition.labels.tolist() == [[1, 1], [2, 2]]
    assert partition.is_gerechte()
    assert partition.is_rectangular()


def test_parse_rects_matches_grid(sudoku4):
    grid = parse_partition("4\n1 1 2 2\n1 1 2 2\n3 3 4 4\n3 3 4 4\n")
    assert sudoku4 == grid
    assert sudoku4.rect(4).model_dump() == {"top": 3, "left": 3, "height": 2, "width": 2}


def test_serialize_is_canonical(mixed12):
    text = serialize_partition(mixed12)
    assert text.startswith("12\n")
    assert text.endswith("\n")
    assert parse_partition(text) == mixed12
    assert "#" not in text
    assert serialize_partition(RegionPartition([[1, 2, 2]])) == "1 3\n1 2 2\n"


@pytest.mark.parametrize(
    "text, message",
    [
        ("", "empty"),
        ("2\n1 1\n2 x\n", "line 3, column 3"),
        ("2\n1 1\n2\n", "expected 2 labels"),
        ("2\n1 1\n", "expected 2 grid rows"),
        ("2\n1 1\n2 5\n", "out of range"),
        ("2\n1 1\n1 3\n", "label count mismatch"),
        ("rects 2\n1 1 1 2\n1 1 1 2\n", "overlaps"),
        ("rects 2\n1 1 1 2\n", "expected 2 rectangles"),
        ("rects 2\n1 1 1 2\n2 2 1 2\n", "leaves"),
        ("rects two\n", "line 1, column 7"),
    ],
)
def test_parse_errors(text, message):
    with pytest.raises(ParseError, match=message):
        parse_partition(text)


def test_parse_error_is_a_framework_error():
    with pytest.raises(FrameworkError):
        parse_partition("1\n0\n")


def test_rect_of_non_rectangular_region_is_none():
    partition = broken_diagonals(3)
    assert partition.is_gerechte()
    assert not partition.is_rectangular()
    assert partition.rect(1) is None
    with pytest.raises(FrameworkError):
        partition.rects()


def test_slices_are_row_runs(tree12):
    slices = tree12.slices()
    assert len(slices) == 2 * 2 + 2 * 2 + 2 * 3 + 2 * 5 + 4 * 5
    first = slices[0]
    assert (first.row, first.region, first.columns) == (0, 1, (0, 1, 2, 3, 4, 5))
    assert first.cells[-1] == (0, 5)


def test_transpose_swaps_axes(columns12):
    transposed = columns12.transpose()
    assert transposed.transpose() == columns12
    assert transposed.rect(1).height == columns12.rect(1).width


@pytest.mark.parametrize(
    "name, labels, shape",
    [
        ("sudoku4_rects.txt", ["uniform", "mixed", "divides", "columns", "tree"], (2, 2)),
        ("mixed12.txt", ["mixed", "divides"], (2, 6)),
        ("columns12.txt", ["columns", "tree"], None),
        ("tree12.txt", ["tree"], None),
    ],
)
def test_classify_samples(load_framework, name, labels, shape):
    label = classify(load_framework(name))
    assert label.labels == labels
    assert label.shape == shape


def test_classify_nonrectangular_and_unsupported():
    assert classify(broken_diagonals(5)).labels == ["nonrectangular"]
    # Bar on top, boxes in the middle, bar at the bottom: no family applies
    partition = RegionPartition(
        [[1, 1, 1, 1], [2, 2, 3, 3], [2, 2, 3, 3], [4, 4, 4, 4]]
    )
    label = classify(partition)
    assert label.labels == ["unsupported"]
    assert str(label) == "unsupported"


def test_classify_rejects_non_gerechte():
    with pytest.raises(FrameworkError):
        classify(RegionPartition([[1, 1], [1, 2]]))


def test_reduce_mixed_framework(mixed12, load_framework):
    reduced = reduce(mixed12, 2)
    assert reduced == load_framework("mixed12_reduced.txt")
    assert reduced.rows == 6
    assert reduce(mixed12, 1) == mixed12


def test_reduce_rejects_misaligned_factor(mixed12):
    with pytest.raises(FrameworkError, match="does not divide"):
        reduce(mixed12, 4)


def test_refine_tree_framework(tree12):
    refined = refine(tree12)
    assert refined.num_regions == 20
    assert column_groups(refined) == [3, 3, 2, 2, 2]
    # Every refined region lies inside one original region
    for label in range(1, refined.num_regions + 1):
        assert len(np.unique(tree12.labels[refined.labels == label])) == 1


def test_refine_requires_tree():
    partition = RegionPartition([[1, 1, 1, 1], [2, 2, 3, 3], [2, 2, 3, 3], [4, 4, 4, 4]])
    with pytest.raises(FrameworkError):
        refine(partition)


def test_column_groups(columns12, mixed12):
    assert column_groups(columns12) == [2, 3, 2, 4, 1]
    assert sum(column_groups(mixed12)) == 12


def test_begin_counts_mixed(mixed12):
    counts = begin_counts(mixed12, 2, 6)
    assert (counts.k, counts.s_prime, counts.t_prime) == (2, 1, 3)
    assert counts.n[0] == 1 and counts.m[0] == 3
    assert counts.m[2] == 3 and counts.m[6] == 3
    assert counts.col_n[2] == 3
    assert sum(counts.n) + sum(counts.m) == 12


def test_begin_counts_rejects_other_shapes(sudoku4):
    with pytest.raises(FrameworkError, match="neither"):
        begin_counts(sudoku4, 1, 4)


def test_alignment_classes(tree12):
    classes = alignment_classes(tree12)
    vertical = [c for c in classes if c.orientation == "vertical"]
    assert len(vertical) == 7
    first = vertical[0]
    assert (first.start, first.extent, first.members) == (1, 3, (5, 11))
    horizontal = [c for c in classes if c.orientation == "horizontal"]
    assert horizontal[0].members == (1, 2)

