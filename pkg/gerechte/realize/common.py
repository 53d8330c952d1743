"""Checks shared by the constructions."""

import logging

from ..errors import ClassificationMismatch, ConstructionError
from ..framework import ClassLabel, RegionPartition, classify
from ..outline import LatinSquare
from ..verify import verify_realization


def require_family(partition: RegionPartition, family: str, method: str) -> ClassLabel:
    """Classify a framework and insist that it belongs to a family.

    Raises:
        ClassificationMismatch: If the family flag is not set
    """
    label = classify(partition)
    if not getattr(label, family):
        raise ClassificationMismatch(f"method {method} needs a {family} framework, got {label}")
    return label


def checked(square: LatinSquare, partition: RegionPartition, method: str) -> LatinSquare:
    """Return the square if it realizes the framework.

    Raises:
        ConstructionError: With the framework attached, if it does not
    """
    report = verify_realization(square, partition)
    if not report.ok:
        logging.error(f"{method} construction produced an invalid square")
        raise ConstructionError(
            f"{method} construction failed verification:\n{report.summary()}",
            framework=partition.to_text(),
        )
    logging.info(f"Realized order-{square.n} framework with the {method} construction")
    return square
