"""Rootgen service - breadth-first positive roots, normalization, isotropy."""

from __future__ import annotations

import logging
from collections.abc import Sequence

import numpy as np

from limitroots.config import get_settings
from limitroots.core.errors import (
    BadArguments,
    BadRootSpec,
    CapacityExceeded,
    OnZeroHyperplane,
)
from limitroots.core.spatial import SpatialIndex
from limitroots.models.datum import CoxeterDatum
from limitroots.models.root import NormalizedPoint, Root, RootTable
from limitroots.services.datum_service import DatumService

logger = logging.getLogger(__name__)

ZERO_SUM_TOL = 1e-14


class RootgenService:
    """Service for enumerating and normalizing roots."""

    @staticmethod
    def generate_positive_roots(
        datum: CoxeterDatum, max_depth: int, capacity: int | None = None
    ) -> RootTable:
        """
        Positive roots reachable from a simple root by words of length <= max_depth.

        Layer d + 1 is the set of r_s(x), x in layer d, that have no coordinate
        below -NEGATIVE_TOL and are not already known (relative max-norm
        DEDUP_TOL). Each layer is sorted lexicographically, so the table is
        independent of iteration order.

        Raises:
            CapacityExceeded: the table would hold more than ``capacity`` roots
        """
        settings = get_settings()
        if max_depth < 0:
            raise BadArguments(f"max_depth must be >= 0, got {max_depth}")
        capacity = settings.ROOT_CAPACITY if capacity is None else capacity
        n = datum.rank
        if n > capacity:
            raise CapacityExceeded(f"{n} simple roots exceed capacity {capacity}")

        index = SpatialIndex(
            grid=settings.DEDUP_GRID,
            reach=min(settings.DEDUP_GRID, 2 * n * settings.DEDUP_TOL),
        )
        stored: list[np.ndarray] = []

        def known(vector: np.ndarray, locator: np.ndarray) -> bool:
            tol = settings.DEDUP_TOL * max(1.0, float(np.max(np.abs(vector))))
            return any(
                float(np.max(np.abs(stored[k] - vector))) <= tol
                for k in index.candidates(locator)
            )

        def remember(vector: np.ndarray, locator: np.ndarray) -> None:
            index.insert(locator, len(stored))
            stored.append(vector)

        layer = [
            Root(coords=tuple(float(x) for x in np.eye(n)[k]), depth=0, word=(), base=k + 1)
            for k in reversed(range(n))
        ]
        for root in layer:
            vector = root.vector
            remember(vector, vector)
        roots: list[Root] = list(layer)

        gram = datum.matrix
        for depth in range(1, max_depth + 1):
            if not layer:
                break
            frontier = np.array([r.coords for r in layer], dtype=float)
            pairings = frontier @ gram
            fresh: list[tuple[tuple[float, ...], Root]] = []
            for s in range(n):
                images = frontier.copy()
                images[:, s] -= 2.0 * pairings[:, s]
                for parent, image in zip(layer, images):
                    if np.any(image < -settings.NEGATIVE_TOL):
                        continue
                    locator = image / image.sum()
                    if known(image, locator):
                        continue
                    remember(image, locator)
                    coords = tuple(float(x) for x in image)
                    fresh.append(
                        (
                            coords,
                            Root(
                                coords=coords,
                                depth=depth,
                                word=(s + 1, *parent.word),
                                base=parent.base,
                            ),
                        )
                    )
                    if len(roots) + len(fresh) > capacity:
                        raise CapacityExceeded(
                            f"root table exceeds capacity {capacity} at depth {depth}"
                        )
            fresh.sort(key=lambda item: item[0])
            layer = [root for _, root in fresh]
            roots.extend(layer)
            logger.debug(f"Depth {depth}: {len(layer)} new roots")

        logger.info(
            f"Generated {len(roots)} positive roots of rank-{n} datum up to depth {max_depth}"
        )
        return RootTable(datum=datum, max_depth=max_depth, roots=tuple(roots))

    @staticmethod
    def normalize(v: np.ndarray) -> NormalizedPoint:
        """v / |v|, the point of V1 on the line through v.

        Raises:
            OnZeroHyperplane: |sum of coordinates| <= 1e-14
        """
        v = np.asarray(v, dtype=float)
        total = float(v.sum())
        if abs(total) <= ZERO_SUM_TOL:
            raise OnZeroHyperplane(f"vector {v.tolist()} lies on the zero-sum hyperplane")
        return NormalizedPoint(coords=tuple(float(x) for x in v / total))

    @staticmethod
    def isotropy(datum: CoxeterDatum, p: np.ndarray) -> float:
        """q(p) = B(p, p); zero exactly on the isotropic cone."""
        return DatumService.bilinear(datum, p, p)

    @staticmethod
    def apply_word(datum: CoxeterDatum, word: Sequence[int], v: np.ndarray) -> np.ndarray:
        """Apply r_{w1} ... r_{wk} to v (rightmost letter first)."""
        image = DatumService.check_vector(datum, v).copy()
        for s in reversed(word):
            image = DatumService.reflect(datum, s, image)
        return image

    @staticmethod
    def is_positive(v: np.ndarray) -> bool:
        """No coordinate below -NEGATIVE_TOL and not the zero vector."""
        v = np.asarray(v, dtype=float)
        return bool(np.all(v >= -get_settings().NEGATIVE_TOL) and v.sum() > 0)

    @staticmethod
    def make_root(datum: CoxeterDatum, word: Sequence[int], base: int) -> Root:
        """The root ``apply_word(word, a_base)``; depth is the word length, not minimized."""
        DatumService.check_generator(datum, base)
        simple = np.zeros(datum.rank)
        simple[base - 1] = 1.0
        image = RootgenService.apply_word(datum, word, simple)
        return Root(
            coords=tuple(float(x) for x in image),
            depth=len(word),
            word=tuple(word),
            base=base,
        )

    @staticmethod
    def words_without_repeats(rank: int, max_len: int) -> list[tuple[int, ...]]:
        """Words of length 1..max_len with no letter repeated consecutively.

        Ordered by length, then lexicographically.
        """
        words: list[tuple[int, ...]] = []
        level: list[tuple[int, ...]] = [()]
        for _ in range(max_len):
            level = [
                (s, *word)
                for s in range(1, rank + 1)
                for word in level
                if not word or word[0] != s
            ]
            if not level:
                break
            words.extend(level)
        return words

    @staticmethod
    def parse_root_spec(datum: CoxeterDatum, spec: str) -> Root:
        """
        Root from ``WORD@k``: comma-separated letters applied to a_k, rightmost first.

        ``"1,2@1"`` is r_1 r_2 a_1 and ``"@2"`` is a_2.

        Raises:
            BadRootSpec: malformed spec or a non-positive result
        """
        word_text, sep, base_text = spec.strip().partition("@")
        if not sep:
            raise BadRootSpec(f"root spec {spec!r} must read WORD@k")
        try:
            base = int(base_text)
            word = [int(s) for s in word_text.split(",")] if word_text.strip() else []
        except ValueError as e:
            raise BadRootSpec(f"root spec {spec!r}: {e}") from e
        for s in (*word, base):
            DatumService.check_generator(datum, s)
        root = RootgenService.make_root(datum, word, base)
        if not RootgenService.is_positive(root.vector):
            raise BadRootSpec(f"root spec {spec!r} gives a negative root {list(root.coords)}")
        return root
