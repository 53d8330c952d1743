import numpy as np
import pytest

from gerechte.errors import (
    BudgetExceeded,
    ClassificationMismatch,
    FrameworkError,
    NoMethodApplicable,
    OutlineError,
    Unrealizable,
)
from gerechte.framework import RegionPartition, begin_counts, classify, generate, reduce
from gerechte.framework.generate import uniform_framework
from gerechte.outline import validate_outline
from gerechte.realize import (
    balanced_row_realization,
    columns_outline,
    divides_square,
    mixed_fill,
    realize,
    realize_columns,
    realize_divides,
    realize_mixed,
    realize_tree,
    realize_uniform,
    row_realization,
    strip_outline,
    top_sets,
)
from gerechte.verify import SearchBudget, verify_realization, verify_row_realization

from .conftest import broken_diagonals, cyclic

BAR_BOXES_BAR = RegionPartition([[1, 1, 1, 1], [2, 2, 3, 3], [2, 2, 3, 3], [4, 4, 4, 4]])

# Hand-checked fill of the reduced mixed12 framework
MIXED12_FILL = [
    [1, 1, 2, 3, 3, 2],
    [2, 1, 3, 2, 1, 3],
    [3, 2, 1, 3, 2, 1],
    [1, 3, 2, 1, 3, 2],
    [2, 2, 3, 1, 1, 3],
    [3, 3, 1, 2, 2, 1],
]


def assert_realizes(square, partition):
    report = verify_realization(square, partition)
    assert report.ok, report.summary()


def box_shapes(limit):
    return [(s, t) for s in range(1, limit + 1) for t in range(1, limit + 1) if 2 <= s * t <= limit]


@pytest.mark.parametrize("s, t", box_shapes(12))
def test_uniform(s, t):
    partition = uniform_framework(s, t)
    assert_realizes(realize_uniform(partition), partition)


@pytest.mark.slow
@pytest.mark.parametrize("s, t", [(s, t) for s, t in box_shapes(36) if s * t > 12])
def test_uniform_up_to_order_36(s, t):
    partition = uniform_framework(s, t)
    assert_realizes(realize_uniform(partition), partition)


def test_divides_square_ignores_layout():
    frameworks = [uniform_framework(2, 4), uniform_framework(4, 2)]
    frameworks += [generate("mixed", seed=seed, s=2, t=4) for seed in range(3)]
    for partition in frameworks:
        assert classify(partition).divides
        square = realize_divides(partition)
        assert square == divides_square(2, 2)
        assert_realizes(square, partition)


def test_divides_on_mixed12(mixed12):
    assert_realizes(realize_divides(mixed12), mixed12)


def test_mixed_fill_of_mixed12(mixed12):
    fill = mixed_fill(reduce(mixed12, 2), 1, 3, 2)
    assert fill.violations() == []
    assert fill.grid.tolist() == MIXED12_FILL
    outline = fill.blow_up()
    assert outline.n == 12
    assert validate_outline(outline).ok


def test_mixed_on_mixed12(mixed12):
    assert_realizes(realize_mixed(mixed12), mixed12)


@pytest.mark.parametrize("s, t", [(2, 3), (2, 4), (3, 4), (2, 6)])
@pytest.mark.parametrize("seed", range(3))
def test_mixed_on_generated(s, t, seed):
    partition = generate("mixed", seed=seed, s=s, t=t)
    assert_realizes(realize_mixed(partition), partition)


@pytest.mark.slow
@pytest.mark.parametrize("s, t", [(2, 3), (3, 4), (4, 6), (6, 9)])
def test_mixed_on_50_frameworks_each(s, t):
    for seed in range(50):
        partition = generate("mixed", seed=seed, s=s, t=t)
        counts = begin_counts(partition, s, t)
        fill = mixed_fill(reduce(partition, counts.k), counts.s_prime, counts.t_prime, counts.k)
        assert fill.violations() == [], seed
        assert_realizes(realize_mixed(partition), partition)


def test_row_realization_of_rows_as_regions():
    partition = uniform_framework(1, 5)
    square = row_realization(partition)
    assert square.is_row_latin()
    assert verify_row_realization(square, partition).ok


def test_row_realization_of_non_rectangular_framework():
    partition = broken_diagonals(5)
    assert verify_row_realization(row_realization(partition), partition).ok


def test_row_realization_with_column_regions():
    partition = RegionPartition([[1, 2], [1, 2]])
    square = row_realization(partition)
    assert verify_row_realization(square, partition).ok


def test_strip_outline_widths_must_sum_to_n():
    with pytest.raises(OutlineError):
        strip_outline(cyclic(4), [2, 1])


def test_columns_outline(columns12):
    outline = columns_outline(columns12)
    assert outline.shape == (12, 5)
    assert outline.T.parts == (2, 3, 2, 4, 1)
    assert validate_outline(outline).ok


def test_columns(columns12):
    assert_realizes(realize_columns(columns12), columns12)


@pytest.mark.parametrize("seed", range(4))
def test_columns_on_generated(seed):
    partition = generate("columns", seed=seed, n=12)
    assert_realizes(realize_columns(partition), partition)


def test_top_sets_of_tree12(tree12):
    contexts = top_sets(tree12)
    assert [c.representative for c in contexts] == [3, 7, 8, 9, 10, 11, 12]
    first, second = contexts[0], contexts[1]
    assert (first.rows, first.chunk_widths, first.d, first.q, first.r) == (4, (3, 3), 3, 2, 2)
    assert (second.rows, second.chunk_widths, second.d, second.q, second.r) == (6, (2, 2, 2), 2, 3, 3)
    assert all(c.q == 1 for c in contexts[2:])


def test_balanced_row_realization_keeps_rows_and_regions(tree12):
    square = balanced_row_realization(tree12)
    assert verify_row_realization(square, tree12).ok
    # the top set of region 3 is split evenly between its two chunks
    top = square.grid[:4]
    for chunk in (slice(0, 3), slice(3, 6)):
        assert np.all(np.bincount(top[:, chunk].ravel(), minlength=13)[1:] == 1)


def test_tree(tree12):
    assert_realizes(realize_tree(tree12), tree12)


@pytest.mark.parametrize("n", [6, 8, 12])
@pytest.mark.parametrize("seed", range(3))
def test_tree_on_generated(n, seed):
    partition = generate("tree", seed=seed, n=n)
    assert_realizes(realize_tree(partition), partition)


# Orders for the seeded columns and tree sweeps
SWEEP_ORDERS = (4, 6, 8, 9, 10, 12, 15, 16, 18, 20, 24)


@pytest.mark.slow
def test_columns_on_100_frameworks():
    for seed in range(100):
        partition = generate("columns", seed=seed, n=SWEEP_ORDERS[seed % len(SWEEP_ORDERS)])
        assert_realizes(realize_columns(partition), partition)


@pytest.mark.slow
def test_tree_on_100_frameworks():
    for seed in range(100):
        partition = generate("tree", seed=seed, n=SWEEP_ORDERS[seed % len(SWEEP_ORDERS)])
        assert verify_row_realization(balanced_row_realization(partition), partition).ok
        assert_realizes(realize_tree(partition), partition)


@pytest.mark.parametrize(
    "fixture, method",
    [("sudoku4", "uniform"), ("mixed12", "mixed"), ("columns12", "columns"), ("tree12", "tree")],
)
def test_auto_picks_the_most_specific_construction(request, fixture, method):
    partition = request.getfixturevalue(fixture)
    result = realize(partition)
    assert result.method == method
    assert_realizes(result.square, partition)


def test_auto_falls_back_to_brute_force():
    partition = broken_diagonals(5)
    result = realize(partition)
    assert result.method == "brute"
    assert_realizes(result.square, partition)

    result = realize(BAR_BOXES_BAR)
    assert result.method == "brute"


def test_unrealizable_framework():
    with pytest.raises(Unrealizable):
        realize(RegionPartition([[1, 2], [2, 1]]))


def test_no_method_above_brute_force_limit():
    with pytest.raises(NoMethodApplicable):
        realize(BAR_BOXES_BAR, budget=SearchBudget(max_order=3))


def test_brute_force_budget(sudoku4):
    with pytest.raises(BudgetExceeded):
        realize(sudoku4, "brute", SearchBudget(max_assignments=1))


def test_explicit_method_outside_family(tree12, mixed12):
    with pytest.raises(ClassificationMismatch):
        realize(tree12, "uniform")
    with pytest.raises(ClassificationMismatch):
        realize(mixed12, "columns")


def test_realize_rejects_bad_input(sudoku4):
    with pytest.raises(FrameworkError, match="unknown method"):
        realize(sudoku4, "magic")
    with pytest.raises(FrameworkError):
        realize(RegionPartition([[1, 1], [1, 2]]))


def test_realization_is_deterministic(mixed12, tree12):
    for partition in (mixed12, tree12):
        assert realize(partition).square == realize(partition).square


DIVIDES_PARAMETERS = [(1, 3), (2, 2), (2, 3), (3, 2)]


def assert_divides_square_realizes(s, c, seeds):
    square = divides_square(s, c)
    for seed in seeds:
        partition = generate("mixed", seed=seed, s=s, t=c * s)
        assert realize_divides(partition) == square
        assert_realizes(square, partition)


@pytest.mark.parametrize("s, c", DIVIDES_PARAMETERS)
def test_divides_on_generated(s, c):
    assert_divides_square_realizes(s, c, range(4))


@pytest.mark.slow
@pytest.mark.parametrize("s, c", DIVIDES_PARAMETERS)
def test_divides_on_25_frameworks_each(s, c):
    assert_divides_square_realizes(s, c, range(4, 29))
