"""Realizations of gerechte frameworks.

Each construction verifies its square before returning it. realize() picks
a construction by classification, falling back to brute force for small
frameworks outside every supported family.
"""

import logging
from typing import Optional

from pydantic import BaseModel, ConfigDict

from ..errors import (
    BudgetExceeded,
    ConstructionError,
    FrameworkError,
    NoMethodApplicable,
    Unrealizable,
)
from ..framework import RegionPartition, classify
from ..outline import LatinSquare
from ..verify import SearchBudget, SearchStatus, brute_force_realize
from .columns import columns_outline, realize_columns
from .common import checked
from .mixed import ReducedFill, mixed_fill, realize_mixed
from .rows import RowLatinSquare, row_realization, strip_outline
from .tree import TopSetContext, balanced_row_realization, realize_tree, top_sets
from .uniform import divides_square, realize_divides, realize_uniform

METHODS = ("auto", "uniform", "divides", "mixed", "columns", "tree", "brute")

CONSTRUCTIONS = {
    "uniform": realize_uniform,
    "divides": realize_divides,
    "mixed": realize_mixed,
    "columns": realize_columns,
    "tree": realize_tree,
}


class RealizationResult(BaseModel):
    """A verified realization and the method that produced it."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    square: LatinSquare
    method: str


def realize_brute(partition: RegionPartition, budget: Optional[SearchBudget] = None) -> LatinSquare:
    """Realize by exhaustive search.

    Raises:
        BudgetExceeded: If the order or assignment budget is exceeded
        Unrealizable: If the search proves there is no realization
    """
    result = brute_force_realize(partition, budget)
    if result.status == SearchStatus.BUDGET_EXCEEDED:
        raise BudgetExceeded(result.reason)
    if result.status == SearchStatus.UNREALIZABLE:
        raise Unrealizable(
            f"order-{partition.order} framework has no realization "
            f"({result.assignments} assignments searched)"
        )
    return checked(result.square, partition, "brute")


def realize(
    partition: RegionPartition,
    method: str = "auto",
    budget: Optional[SearchBudget] = None,
) -> RealizationResult:
    """Realize a gerechte framework.

    With method "auto" the constructions are tried in the order uniform,
    mixed, columns, tree, each only when the classification allows it, and
    brute force comes last for frameworks no larger than the budget's order
    limit.

    Args:
        partition (RegionPartition): A gerechte framework
        method (str): One of METHODS
        budget (SearchBudget, optional): Limits for brute force

    Returns:
        RealizationResult: The verified square and the method used

    Raises:
        FrameworkError: If the partition is not gerechte or the method is unknown
        ClassificationMismatch: If an explicit method does not apply
        NoMethodApplicable: If auto finds no construction and brute force
            is out of reach
        BudgetExceeded: If brute force runs out of budget
        ConstructionError: If every applicable construction failed
    """
    if method not in METHODS:
        raise FrameworkError(f"unknown method {method!r}, expected one of {', '.join(METHODS)}")
    if not partition.is_gerechte():
        raise FrameworkError("only gerechte frameworks can be realized")
    budget = budget or SearchBudget()

    if method == "brute":
        return RealizationResult(square=realize_brute(partition, budget), method="brute")
    if method != "auto":
        return RealizationResult(square=CONSTRUCTIONS[method](partition), method=method)

    label = classify(partition)
    logging.info(f"Framework of order {partition.order} classified as {label}")
    failure = None
    for family in ("uniform", "mixed", "columns", "tree"):
        if not getattr(label, family):
            continue
        try:
            return RealizationResult(square=CONSTRUCTIONS[family](partition), method=family)
        except ConstructionError as e:
            logging.error(f"{family} construction failed: {e}")
            failure = e

    if partition.order <= budget.max_order:
        return RealizationResult(square=realize_brute(partition, budget), method="brute")
    if failure is not None:
        raise failure
    raise NoMethodApplicable(
        f"no construction applies to this {label} framework and order "
        f"{partition.order} is above the brute-force limit {budget.max_order}"
    )


__all__ = [
    "CONSTRUCTIONS",
    "METHODS",
    "RealizationResult",
    "ReducedFill",
    "RowLatinSquare",
    "TopSetContext",
    "balanced_row_realization",
    "columns_outline",
    "divides_square",
    "mixed_fill",
    "realize",
    "realize_brute",
    "realize_columns",
    "realize_divides",
    "realize_mixed",
    "realize_tree",
    "realize_uniform",
    "row_realization",
    "strip_outline",
    "top_sets",
]
