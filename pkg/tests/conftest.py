"""Shared fixtures: sample frameworks and squares."""

from pathlib import Path

import numpy as np
import pytest

from gerechte.framework import RegionPartition, parse_partition
from gerechte.outline import LatinSquare

FRAMEWORKS = Path(__file__).resolve().parent.parent / "frameworks"

# Order-6 latin square used for the (1,2,3), (2,2,2), (1,1,2,2) amalgamation tests
SAMPLE6_SQUARE = [
    [1, 4, 2, 3, 5, 6],
    [3, 5, 4, 6, 1, 2],
    [4, 6, 1, 5, 2, 3],
    [2, 3, 5, 4, 6, 1],
    [6, 1, 3, 2, 4, 5],
    [5, 2, 6, 1, 3, 4],
]


def cyclic(n: int) -> LatinSquare:
    i, j = np.indices((n, n))
    return LatinSquare((i + j) % n + 1)


def broken_diagonals(n: int) -> RegionPartition:
    """Non-rectangular framework whose regions are the broken diagonals."""
    i, j = np.indices((n, n))
    return RegionPartition((j - i) % n + 1)


@pytest.fixture
def framework_file():
    """Path of a sample framework file."""

    def path(name: str) -> Path:
        return FRAMEWORKS / name

    return path


@pytest.fixture
def load_framework(framework_file):
    def load(name: str) -> RegionPartition:
        return parse_partition(framework_file(name).read_text())

    return load


@pytest.fixture
def sudoku4(load_framework):
    return load_framework("sudoku4_rects.txt")


@pytest.fixture
def mixed12(load_framework):
    return load_framework("mixed12.txt")


@pytest.fixture
def columns12(load_framework):
    return load_framework("columns12.txt")


@pytest.fixture
def tree12(load_framework):
    return load_framework("tree12.txt")


@pytest.fixture
def sample6_square():
    return LatinSquare(SAMPLE6_SQUARE)
