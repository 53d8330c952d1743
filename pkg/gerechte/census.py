"""Exhaustive census of rectangular frameworks of a given order.

Every partition of the n x n grid into n rectangles of area n is realized,
by brute force (the default) or by the auto dispatcher. In brute mode the
constructive path is run as well for frameworks in a supported family, and
both squares are verified. Frameworks are processed by a worker pool; one
failing framework becomes an error record and never stops the census.
"""

import asyncio
import logging
import sys
from concurrent.futures import ProcessPoolExecutor, ThreadPoolExecutor
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict
from tqdm import tqdm

from .database import CensusDatabase
from .errors import BudgetExceeded, ConstructionError, Unrealizable
from .framework import classify, parse_partition, serialize_partition
from .outline import format_square
from .realize import CONSTRUCTIONS, realize
from .verify import (
    DEFAULT_ENUMERATION_CAP,
    SearchBudget,
    SearchStatus,
    brute_force_realize,
    enumerate_rect_frameworks,
    verify_realization,
)

CENSUS_METHODS = ("brute", "auto")
SUPPORTED_FAMILIES = ("uniform", "mixed", "columns", "tree")


class CensusRecord(BaseModel):
    """Outcome for one framework.

    Attributes:
        layout (str): Canonical grid serialization of the framework
        labels (str): Classification text
        primary (str): Most specific family, "unsupported" or "nonrectangular"
        status (str): "realized", "unrealizable", "budget_exceeded" or "error"
        method (Optional[str]): Method that produced the square
        constructive (Optional[str]): Construction that also realized the
            framework (brute mode, supported families only)
        square (Optional[str]): The realization in square text format
        assignments (int): Brute-force placements tried
        error (Optional[str]): Error message for status "error"
    """

    model_config = ConfigDict(frozen=True)

    layout: str
    labels: str = ""
    primary: str = ""
    status: str
    method: Optional[str] = None
    constructive: Optional[str] = None
    square: Optional[str] = None
    assignments: int = 0
    error: Optional[str] = None


class CensusSummary(BaseModel):
    """Tally of a census run."""

    model_config = ConfigDict(frozen=True)

    n: int
    records: List[CensusRecord]

    @property
    def frameworks(self) -> int:
        return len(self.records)

    @property
    def realized(self) -> int:
        return sum(1 for r in self.records if r.status == SearchStatus.REALIZED.value)

    def count(self, status: str) -> int:
        return sum(1 for r in self.records if r.status == status)

    @property
    def class_counts(self) -> Dict[str, int]:
        counts: Dict[str, int] = {}
        for record in self.records:
            counts[record.primary] = counts.get(record.primary, 0) + 1
        return dict(sorted(counts.items()))

    @property
    def all_realizable(self) -> bool:
        return self.realized == self.frameworks

    def to_tsv(self) -> str:
        """Summary table with header `n frameworks realized class_counts`."""
        classes = ",".join(f"{name}={count}" for name, count in self.class_counts.items())
        header = "\t".join(("n", "frameworks", "realized", "class_counts"))
        row = "\t".join((str(self.n), str(self.frameworks), str(self.realized), classes or "-"))
        return f"{header}\n{row}\n"


def census_one(layout: str, method: str, budget: Dict) -> Dict:
    """Realize a single framework; runs inside a worker.

    In brute mode the construction for the most specific supported family
    is run directly; if it raises or its square fails verification the
    record gets status "error".

    Returns:
        dict: Keyword arguments of a CensusRecord
    """
    partition = parse_partition(layout)
    label = classify(partition)
    search = SearchBudget(**budget)
    record = {"layout": layout, "labels": str(label), "primary": label.primary}

    if method == "auto":
        try:
            result = realize(partition, "auto", search)
        except Unrealizable as e:
            return {**record, "status": SearchStatus.UNREALIZABLE.value, "error": str(e)}
        except BudgetExceeded as e:
            return {**record, "status": SearchStatus.BUDGET_EXCEEDED.value, "error": str(e)}
        constructive = result.method if result.method != "brute" else None
        return {
            **record,
            "status": SearchStatus.REALIZED.value,
            "method": result.method,
            "constructive": constructive,
            "square": format_square(result.square),
        }

    outcome = brute_force_realize(partition, search)
    record.update(status=outcome.status.value, method="brute", assignments=outcome.assignments)
    if outcome.square is not None:
        record["square"] = format_square(outcome.square)
    family = next((name for name in SUPPORTED_FAMILIES if getattr(label, name)), None)
    if family is None:
        return record
    try:
        square = CONSTRUCTIONS[family](partition)
    except ConstructionError as e:
        logging.error(f"{family} construction failed in the census: {e}")
        return {**record, "status": "error", "error": f"{family} construction failed: {e}"}
    if not verify_realization(square, partition).ok:
        return {**record, "status": "error", "error": f"{family} square failed verification"}
    record["constructive"] = family
    return record


async def _realize_all(
    layouts: List[str], method: str, budget: Dict, workers: int, progress: bool
) -> List[CensusRecord]:
    loop = asyncio.get_running_loop()
    pool = ProcessPoolExecutor if workers > 1 else ThreadPoolExecutor
    with pool(max_workers=max(1, workers)) as executor, tqdm(
        total=len(layouts), desc="census", unit="framework", disable=not progress, file=sys.stderr
    ) as bar:
        tasks = [
            loop.run_in_executor(executor, census_one, layout, method, budget)
            for layout in layouts
        ]
        for task in tasks:
            task.add_done_callback(lambda _: bar.update())
        results = await asyncio.gather(*tasks, return_exceptions=True)

    # Convert exceptions to error records
    records = []
    for layout, result in zip(layouts, results):
        if isinstance(result, Exception):
            logging.error(f"Census failed on a framework: {result}")
            label = classify(parse_partition(layout))
            records.append(
                CensusRecord(
                    layout=layout,
                    labels=str(label),
                    primary=label.primary,
                    status="error",
                    error=str(result),
                )
            )
        else:
            records.append(CensusRecord(**result))
    return records


def _store(database: CensusDatabase, n: int, record: CensusRecord):
    framework_id = database.get_or_create_framework(n, record.layout, record.labels)
    database.store_result(
        framework_id,
        record.method or "none",
        record.status,
        record.square,
        record.assignments,
    )
    if record.constructive and record.method == "brute":
        database.store_result(framework_id, record.constructive, SearchStatus.REALIZED.value)


def _restore(rows: List[Dict]) -> CensusRecord:
    first = rows[0]
    labels = first["labels"] or ""
    constructive = next((r["method"] for r in rows[1:]), None)
    if constructive is None and first["method"] not in ("brute", "none"):
        constructive = first["method"]
    return CensusRecord(
        layout=first["layout"],
        labels=labels,
        primary=labels.split(" (")[0].split(" ")[0],
        status=first["status"],
        method=None if first["method"] == "none" else first["method"],
        constructive=constructive,
        square=first["square"],
        assignments=first["assignments"] or 0,
    )


def run_census(
    n: int,
    method: str = "brute",
    budget: Optional[SearchBudget] = None,
    workers: int = 1,
    database: Optional[CensusDatabase] = None,
    progress: bool = True,
    cap: int = DEFAULT_ENUMERATION_CAP,
    allow_large: bool = False,
) -> CensusSummary:
    """Enumerate and realize every rectangular framework of order n.

    Args:
        n (int): Order
        method (str): "brute" (oracle plus constructive check) or "auto"
        budget (SearchBudget, optional): Brute-force limits
        workers (int): Worker processes; 1 runs in a single thread
        database (CensusDatabase, optional): Store for results; frameworks
            it already holds results for are not realized again
        progress (bool): Show a progress bar on stderr
        cap (int): Largest order enumerated without allow_large
        allow_large (bool): Lift the order cap

    Returns:
        CensusSummary: Records in enumeration order

    Raises:
        ValueError: If the method is unknown
        BudgetExceeded: If n is above the cap
    """
    if method not in CENSUS_METHODS:
        raise ValueError(f"census method must be one of {CENSUS_METHODS}, got {method!r}")
    budget = budget or SearchBudget()
    layouts = [
        serialize_partition(partition)
        for partition in enumerate_rect_frameworks(n, cap=cap, allow_large=allow_large)
    ]
    logging.info(f"Enumerated {len(layouts)} rectangular frameworks of order {n}")

    known: Dict[str, CensusRecord] = {}
    if database is not None:
        grouped: Dict[str, List[Dict]] = {}
        for row in database.results(n):
            grouped.setdefault(row["layout"], []).append(row)
        known = {layout: _restore(rows) for layout, rows in grouped.items()}
        logging.info(f"Resuming census: {len(known)} frameworks already recorded")

    pending = [layout for layout in layouts if layout not in known]
    fresh = asyncio.run(_realize_all(pending, method, budget.model_dump(), workers, progress))
    for record in fresh:
        known[record.layout] = record
        if database is not None and not database.read_only:
            _store(database, n, record)

    summary = CensusSummary(n=n, records=[known[layout] for layout in layouts])
    logging.info(
        f"Census of order {n}: {summary.realized}/{summary.frameworks} realized, "
        f"{summary.count('unrealizable')} unrealizable, {summary.count('error')} errors"
    )
    return summary
