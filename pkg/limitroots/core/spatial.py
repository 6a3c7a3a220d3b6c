"""Tolerance lookups: grid hashing for root dedup, a k-d tree for clustering."""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from collections.abc import Iterator, Sequence

import numpy as np
from scipy.spatial import cKDTree


class SpatialIndex:
    """Buckets points on a regular grid.

    A point is filed under the cell containing it. A lookup also visits the
    adjacent cells along every axis where the query lies within ``reach`` of
    a cell wall, so any stored point within ``reach`` (max-norm) of the query
    is returned as a candidate. ``reach`` must not exceed ``grid``.
    """

    def __init__(self, grid: float, reach: float) -> None:
        if reach > grid:
            raise ValueError("reach must not exceed the grid size")
        self.grid = grid
        self.reach = reach
        self._cells: dict[tuple[int, ...], list[int]] = defaultdict(list)

    def _cell(self, point: Sequence[float]) -> tuple[int, ...]:
        return tuple(math.floor(float(c) / self.grid) for c in point)

    def _neighbour_cells(self, point: Sequence[float]) -> Iterator[tuple[int, ...]]:
        axes: list[tuple[int, ...]] = []
        for c in point:
            k = math.floor(float(c) / self.grid)
            options = [k]
            if float(c) - k * self.grid < self.reach:
                options.append(k - 1)
            if (k + 1) * self.grid - float(c) < self.reach:
                options.append(k + 1)
            axes.append(tuple(options))
        return itertools.product(*axes)

    def insert(self, point: Sequence[float], ident: int) -> None:
        self._cells[self._cell(point)].append(ident)

    def candidates(self, point: Sequence[float]) -> list[int]:
        """Identifiers stored near ``point``, in insertion order."""
        found: list[int] = []
        for cell in self._neighbour_cells(point):
            found.extend(self._cells.get(cell, ()))
        return sorted(found)

    def __len__(self) -> int:
        return sum(len(v) for v in self._cells.values())


def greedy_cluster(points: Sequence[Sequence[float]], tol: float) -> list[int]:
    """Indices of the points kept by first-come clustering at ``tol`` (max-norm).

    A point is dropped when an already kept point lies within ``tol``; kept
    points are therefore pairwise more than ``tol`` apart.
    """
    coords = np.asarray(points, dtype=float)
    if len(coords) == 0:
        return []
    tree = cKDTree(coords)
    dropped = np.zeros(len(coords), dtype=bool)
    kept: list[int] = []
    for k in range(len(coords)):
        if dropped[k]:
            continue
        kept.append(k)
        dropped[tree.query_ball_point(coords[k], r=tol, p=np.inf)] = True
    return kept
