"""Roots, normalized points and the breadth-first root table."""

from __future__ import annotations

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr

from limitroots.models.datum import CoxeterDatum


class NormalizedPoint(BaseModel):
    """Point of the transverse hyperplane V1 (coordinates sum to one)."""

    model_config = ConfigDict(frozen=True)

    coords: tuple[float, ...]

    @property
    def vector(self) -> np.ndarray:
        return np.array(self.coords, dtype=float)


class Root(BaseModel):
    """Positive root with its BFS depth and a witnessing word.

    ``coords == apply_word(word, e_base)``; ``word`` is applied right to left.
    """

    model_config = ConfigDict(frozen=True)

    coords: tuple[float, ...]
    depth: int = Field(..., ge=0)
    word: tuple[int, ...] = ()
    base: int = Field(..., ge=1)

    @property
    def vector(self) -> np.ndarray:
        return np.array(self.coords, dtype=float)

    @property
    def norm_sum(self) -> float:
        """The functional |v|: sum of the coordinates."""
        return float(sum(self.coords))

    @property
    def normalized(self) -> NormalizedPoint:
        total = self.norm_sum
        return NormalizedPoint(coords=tuple(c / total for c in self.coords))


class RootTable(BaseModel):
    """Positive roots up to ``max_depth`` in canonical order.

    Canonical order is ascending depth, then lexicographic coordinates.
    """

    model_config = ConfigDict(frozen=True)

    datum: CoxeterDatum
    max_depth: int
    roots: tuple[Root, ...]

    _coords: np.ndarray = PrivateAttr()

    def model_post_init(self, __context) -> None:
        if self.roots:
            coords = np.array([r.coords for r in self.roots], dtype=float)
        else:
            coords = np.zeros((0, self.datum.rank))
        coords.setflags(write=False)
        self._coords = coords

    @property
    def coords(self) -> np.ndarray:
        """All root coordinates stacked row-wise (read-only)."""
        return self._coords

    @property
    def normalized(self) -> np.ndarray:
        return self._coords / self._coords.sum(axis=1, keepdims=True)

    @property
    def depths(self) -> np.ndarray:
        return np.array([r.depth for r in self.roots], dtype=int)

    def __len__(self) -> int:
        return len(self.roots)

    def index_of(self, vector: np.ndarray, tol: float = 1e-8) -> int | None:
        """Position of the root equal to ``vector`` (relative max-norm ``tol``)."""
        if not self.roots:
            return None
        vector = np.asarray(vector, dtype=float)
        scale = max(1.0, float(np.max(np.abs(vector))))
        gaps = np.max(np.abs(self._coords - vector), axis=1)
        hits = np.flatnonzero(gaps <= tol * scale)
        return int(hits[0]) if hits.size else None

    def at_depth(self, depth: int) -> list[Root]:
        return [r for r in self.roots if r.depth == depth]
