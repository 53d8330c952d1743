"""Seeded generation of gerechte frameworks for tests and experiments.

The generators are deterministic for a given seed but make no claim of
sampling uniformly from the frameworks of a family.

Families and parameters:
    uniform(s, t) - the banded layout of s x t boxes (forced)
    mixed(s, t)   - randomized depth-first tiling by s x t and t x s boxes
    columns(n)    - column groups of random widths, each a stack of regions
    tree(n)       - recursive parent bands over complete child regions
"""

import logging
from math import gcd
from typing import List

import numpy as np

from ..errors import GenerationError
from .analysis import classify
from .partition import RegionPartition

# Cap on tile placements tried by the randomized tiling search
DEFAULT_MAX_NODES = 1_000_000

FAMILIES = ("uniform", "mixed", "columns", "tree")


def _divisors(n: int) -> List[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed % 2**64)


def uniform_framework(s: int, t: int) -> RegionPartition:
    """The order-st framework of s x t boxes in bands of s rows."""
    n = s * t
    rows, cols = np.indices((n, n))
    return RegionPartition((rows // s) * s + cols // t + 1)


def _tile(size: int, shapes, rng: np.random.Generator, max_nodes: int) -> np.ndarray:
    """Tile a size x size grid with the given shapes by randomized DFS.

    The first free cell in row-major order is always covered next; the shape
    order at every node is shuffled.
    """
    grid = np.zeros((size, size), dtype=np.int64)
    flat = grid.ravel()
    nodes = 0

    def place(start: int, label: int) -> bool:
        nonlocal nodes
        free = np.flatnonzero(flat[start:] == 0)
        if free.size == 0:
            return True
        position = start + int(free[0])
        r, c = divmod(position, size)
        for index in rng.permutation(len(shapes)):
            h, w = shapes[index]
            if r + h > size or c + w > size or grid[r : r + h, c : c + w].any():
                continue
            nodes += 1
            if nodes > max_nodes:
                raise GenerationError(f"tiling search exceeded {max_nodes} placements")
            grid[r : r + h, c : c + w] = label
            if place(position, label + 1):
                return True
            grid[r : r + h, c : c + w] = 0
        return False

    if not place(0, 1):
        raise GenerationError(f"no tiling of the {size}x{size} grid by {shapes}")
    return grid


def mixed_framework(s: int, t: int, seed: int = 0, max_nodes: int = DEFAULT_MAX_NODES):
    """A random order-st framework of s x t and t x s regions.

    The tiling is built on the reduced grid with s' x t' and t' x s' tiles
    and scaled up by k = gcd(s, t); every tiling by the full-size shapes has
    its corners on multiples of k, so no framework is out of reach.
    """
    k = gcd(s, t)
    a, b = s // k, t // k
    shapes = [(a, b)] if a == b else [(a, b), (b, a)]
    reduced = _tile(s * t // k, shapes, _rng(seed), max_nodes)
    return RegionPartition(np.kron(reduced, np.ones((k, k), dtype=np.int64)))


def columns_framework(n: int, seed: int = 0) -> RegionPartition:
    """A random order-n framework whose regions are arranged in columns."""
    rng = _rng(seed)
    divisors = _divisors(n)
    labels = np.zeros((n, n), dtype=np.int64)
    left, label = 0, 1
    while left < n:
        choices = [d for d in divisors if d <= n - left]
        width = int(rng.choice(choices))
        height = n // width
        for top in range(0, n, height):
            labels[top : top + height, left : left + width] = label
            label += 1
        left += width
    return RegionPartition(labels)


def tree_framework(n: int, seed: int = 0) -> RegionPartition:
    """A random order-n framework whose regions form a tree structure.

    Every strip reaches the bottom of the grid. A strip of width w gets a
    parent band of height n/w across its full width; the rest of the strip
    is cut into narrower strips whose cell counts are multiples of n, and
    each of those is filled the same way.
    """
    rng = _rng(seed)
    divisors = set(_divisors(n))
    labels = np.zeros((n, n), dtype=np.int64)
    counter = [0]

    def split(top: int, left: int, width: int):
        # strip widths must keep (rows below top) * width a multiple of n
        unit = n // gcd(n, n - top)
        remaining = width
        while remaining:
            choices = [w for w in range(unit, remaining + 1, unit) if w in divisors]
            part = int(rng.choice(choices))
            strip(top, left + width - remaining, part)
            remaining -= part

    def strip(top: int, left: int, width: int):
        height = n // width
        counter[0] += 1
        labels[top : top + height, left : left + width] = counter[0]
        if top + height < n:
            split(top + height, left, width)

    split(0, 0, n)
    return RegionPartition(labels)


def generate(family: str, seed: int = 0, **params) -> RegionPartition:
    """Generate a framework of the requested family.

    Args:
        family (str): One of "uniform", "mixed", "columns", "tree"
        seed (int): Seed fixing every random choice
        **params: s and t for uniform/mixed, n for columns/tree

    Returns:
        RegionPartition: A gerechte framework classified into the family

    Raises:
        GenerationError: If the parameters are inconsistent or no framework
            could be produced
    """
    try:
        if family == "uniform":
            partition = uniform_framework(int(params["s"]), int(params["t"]))
        elif family == "mixed":
            partition = mixed_framework(
                int(params["s"]),
                int(params["t"]),
                seed=seed,
                max_nodes=params.get("max_nodes", DEFAULT_MAX_NODES),
            )
        elif family == "columns":
            partition = columns_framework(int(params["n"]), seed=seed)
        elif family == "tree":
            partition = tree_framework(int(params["n"]), seed=seed)
        else:
            raise GenerationError(f"unknown framework family {family!r}")
    except KeyError as e:
        raise GenerationError(f"family {family!r} needs parameter {e.args[0]}")
    except ValueError as e:
        raise GenerationError(f"invalid parameters for {family!r}: {e}")

    label = classify(partition)
    if not getattr(label, family):
        raise GenerationError(f"generated framework is {label}, not {family}")
    logging.info(f"Generated {family} framework of order {partition.rows} ({label})")
    return partition
