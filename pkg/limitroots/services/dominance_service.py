"""Dominance service - presence, separation direction and the word oracle."""

from __future__ import annotations

import logging
from functools import lru_cache

import numpy as np

from limitroots.config import get_settings
from limitroots.core.errors import (
    BadArguments,
    BaseNotInTable,
    CapacityExceeded,
    Degenerate,
    NotComparable,
)
from limitroots.core.pencil import line_parameters
from limitroots.models.datum import CoxeterDatum
from limitroots.models.dominance import DominanceVerdict
from limitroots.models.enums import Direction, VerdictMethod
from limitroots.models.root import Root, RootTable
from limitroots.schemas.dominance import DominanceRow, DominanceSweep
from limitroots.services.datum_service import DatumService
from limitroots.services.rootgen_service import RootgenService

logger = logging.getLogger(__name__)


def _vec(x: Root | np.ndarray) -> np.ndarray:
    return x.vector if isinstance(x, Root) else np.asarray(x, dtype=float)


def _word_count(rank: int, max_len: int) -> int:
    return sum(rank * (rank - 1) ** (length - 1) for length in range(1, max_len + 1))


@lru_cache(maxsize=32)
def _word_functionals(
    datum: CoxeterDatum, max_len: int
) -> tuple[tuple[tuple[int, ...], ...], np.ndarray]:
    """All words without a repeated adjacent letter, length 1..max_len.

    Words come in length-then-lexicographic order. Row k of the returned
    matrix is the functional v -> |w_k v|, whose sign tells whether w_k sends
    a root to a positive or a negative root.
    """
    n = datum.rank
    total = _word_count(n, max_len)
    budget = get_settings().ORACLE_WORD_BUDGET
    if total > budget:
        raise CapacityExceeded(f"{total} oracle words exceed the budget of {budget}")

    gram = datum.matrix
    reflections = []
    for s in range(n):
        r = np.eye(n)
        r[s, :] -= 2.0 * gram[s, :]
        reflections.append(r)

    words: list[tuple[int, ...]] = []
    functionals: list[np.ndarray] = []
    level_words: list[tuple[int, ...]] = [()]
    level_maps: list[np.ndarray] = [np.eye(n)]
    for _ in range(max_len):
        next_words: list[tuple[int, ...]] = []
        next_maps: list[np.ndarray] = []
        for s in range(1, n + 1):
            for word, matrix in zip(level_words, level_maps):
                if word and word[0] == s:
                    continue
                next_words.append((s, *word))
                next_maps.append(reflections[s - 1] @ matrix)
        if not next_words:
            break
        words.extend(next_words)
        functionals.extend(m.sum(axis=0) for m in next_maps)
        level_words, level_maps = next_words, next_maps

    rows = np.array(functionals) if functionals else np.zeros((0, n))
    logger.debug(f"Oracle enumerated {len(words)} words up to length {max_len}")
    return tuple(words), rows


class DominanceService:
    """Service for deciding dominance between positive roots."""

    @staticmethod
    def dominance_present(datum: CoxeterDatum, x: Root | np.ndarray, y: Root | np.ndarray) -> bool:
        """Dominance holds one way or the other iff B(x, y) >= 1."""
        tol = get_settings().DOMINANCE_TOL
        return DatumService.bilinear(datum, _vec(x), _vec(y)) >= 1.0 - tol

    @staticmethod
    def dominates_separation(
        datum: CoxeterDatum, x: Root | np.ndarray, y: Root | np.ndarray
    ) -> DominanceVerdict:
        """
        Direction of dominance from the line through x-hat and y-hat.

        x dom y exactly when x-hat separates y-hat from the isotropic points
        of the line, i.e. both isotropic parameters lie before t = 0 on
        x-hat + t (y-hat - x-hat).

        Raises:
            NotComparable: B(x, y) < 1
            Degenerate: tangent case |B(x, y) - 1| <= tol, or an undecidable layout
        """
        tol = get_settings().DOMINANCE_TOL
        xv, yv = _vec(x), _vec(y)
        pairing = DatumService.bilinear(datum, xv, yv)
        if pairing < 1.0 - tol:
            raise NotComparable(f"B(x, y) = {pairing} < 1: no dominance")
        scale = max(1.0, float(np.max(np.abs(xv))))
        if float(np.max(np.abs(xv - yv))) <= 1e-8 * scale:
            return DominanceVerdict(
                present=True,
                direction=Direction.equal,
                method=VerdictMethod.separation,
                pairing=pairing,
            )
        if abs(pairing - 1.0) <= tol:
            raise Degenerate(f"tangent configuration, B(x, y) = {pairing}")

        p = RootgenService.normalize(xv).vector
        q = RootgenService.normalize(yv).vector
        params = line_parameters(datum.matrix, p, q)
        if params and all(t < 0.0 for t in params):
            direction = Direction.x_dom_y
        elif params and all(t > 1.0 for t in params):
            direction = Direction.y_dom_x
        else:
            raise Degenerate(f"isotropic parameters {params} do not separate the roots")
        return DominanceVerdict(
            present=True,
            direction=direction,
            method=VerdictMethod.separation,
            pairing=pairing,
        )

    @staticmethod
    def find_oracle_witness(
        datum: CoxeterDatum, x: Root | np.ndarray, y: Root | np.ndarray, max_len: int
    ) -> tuple[int, ...] | None:
        """First word w (length, then lexicographic) with wx negative and wy positive."""
        if max_len < 1:
            raise BadArguments(f"oracle length must be >= 1, got {max_len}")
        words, rows = _word_functionals(datum, max_len)
        if not words:
            return None
        sx = rows @ DatumService.check_vector(datum, _vec(x))
        sy = rows @ DatumService.check_vector(datum, _vec(y))
        hits = np.flatnonzero((sx < 0.0) & (sy > 0.0))
        return words[int(hits[0])] if hits.size else None

    @staticmethod
    def dominates_oracle(
        datum: CoxeterDatum, x: Root | np.ndarray, y: Root | np.ndarray, max_len: int
    ) -> bool:
        """
        x dom y checked word by word up to ``max_len``.

        ``False`` is exact (a witness exists); ``True`` only means no witness
        was found within the cutoff.
        """
        return DominanceService.find_oracle_witness(datum, x, y, max_len) is None

    @staticmethod
    def decide_dominance(
        datum: CoxeterDatum,
        x: Root | np.ndarray,
        y: Root | np.ndarray,
        oracle_len: int | None = None,
    ) -> DominanceVerdict:
        """Separation verdict, falling back to the oracle in the tangent case."""
        xv, yv = _vec(x), _vec(y)
        pairing = DatumService.bilinear(datum, xv, yv)
        if not DominanceService.dominance_present(datum, xv, yv):
            return DominanceVerdict(
                present=False,
                direction=Direction.none,
                method=VerdictMethod.gram,
                pairing=pairing,
            )
        try:
            return DominanceService.dominates_separation(datum, xv, yv)
        except Degenerate as e:
            logger.debug(f"Separation undecided ({e}); using the word oracle")
        max_len = oracle_len or get_settings().DEFAULT_ORACLE_LEN
        x_dom_y = DominanceService.dominates_oracle(datum, xv, yv, max_len)
        y_dom_x = DominanceService.dominates_oracle(datum, yv, xv, max_len)
        if x_dom_y and not y_dom_x:
            direction = Direction.x_dom_y
        elif y_dom_x and not x_dom_y:
            direction = Direction.y_dom_x
        elif x_dom_y and y_dom_x:
            direction = Direction.equal
        else:
            direction = Direction.none
        return DominanceVerdict(
            present=True, direction=direction, method=VerdictMethod.oracle, pairing=pairing
        )

    @staticmethod
    def dominance_cone(
        datum: CoxeterDatum,
        base: Root | np.ndarray,
        table: RootTable,
        oracle_len: int | None = None,
    ) -> list[Root]:
        """
        A = {x in table | x dom base}, in canonical order.

        Raises:
            BaseNotInTable: ``base`` is not one of the table roots
        """
        base_vector = _vec(base)
        position = table.index_of(base_vector)
        if position is None:
            raise BaseNotInTable(f"root {base_vector.tolist()} is not in the table")
        tol = get_settings().DOMINANCE_TOL
        pairings = table.coords @ datum.matrix @ base_vector

        cone: list[Root] = []
        for k, root in enumerate(table.roots):
            if k == position:
                cone.append(root)
                continue
            if pairings[k] < 1.0 - tol:
                continue
            verdict = DominanceService.decide_dominance(datum, root, base_vector, oracle_len)
            if verdict.direction == Direction.x_dom_y:
                cone.append(root)
        return cone

    @staticmethod
    def dominance_sweep(
        datum: CoxeterDatum,
        table: RootTable,
        max_pairs: int | None = None,
        oracle_len: int | None = None,
        seed: int = 0,
    ) -> DominanceSweep:
        """
        Verdicts for root pairs with the oracle as referee.

        All unordered pairs are used when there are at most ``max_pairs``;
        otherwise ``max_pairs`` distinct pairs are drawn with ``seed``.
        """
        settings = get_settings()
        max_pairs = settings.DEFAULT_MAX_PAIRS if max_pairs is None else max_pairs
        oracle_len = settings.DEFAULT_ORACLE_LEN if oracle_len is None else oracle_len
        if max_pairs < 1 or oracle_len < 1:
            raise BadArguments("max_pairs and oracle_len must be >= 1")

        m = len(table)
        total = m * (m - 1) // 2
        if total <= max_pairs:
            pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
        else:
            rng = np.random.default_rng(seed)
            picked: set[tuple[int, int]] = set()
            while len(picked) < max_pairs:
                i, j = (int(v) for v in rng.integers(0, m, size=2))
                if i != j:
                    picked.add((min(i, j), max(i, j)))
            pairs = sorted(picked)

        coords = table.coords
        words, rows = _word_functionals(datum, oracle_len)
        signs = rows @ coords.T if words else np.zeros((0, m))
        negative = signs < 0.0
        positive = signs > 0.0

        tol = settings.DOMINANCE_TOL
        gram = datum.matrix
        result_rows: list[DominanceRow] = []
        disagreements = 0
        compared = 0
        for i, j in pairs:
            pairing = float(coords[i] @ gram @ coords[j])
            if pairing < 1.0 - tol:
                result_rows.append(
                    DominanceRow(
                        x_index=i,
                        y_index=j,
                        B_xy=pairing,
                        present=False,
                        direction=Direction.none,
                        method=VerdictMethod.gram,
                    )
                )
                continue
            verdict = DominanceService.decide_dominance(datum, coords[i], coords[j], oracle_len)
            x_dom_y = not bool(np.any(negative[:, i] & positive[:, j]))
            y_dom_x = not bool(np.any(negative[:, j] & positive[:, i]))
            if x_dom_y and not y_dom_x:
                refereed = Direction.x_dom_y
            elif y_dom_x and not x_dom_y:
                refereed = Direction.y_dom_x
            else:
                refereed = Direction.equal if x_dom_y else Direction.none
            compared += 1
            agrees = verdict.direction == refereed
            if not agrees:
                disagreements += 1
                logger.warning(
                    f"Pair ({i}, {j}): {verdict.method} says {verdict.direction}, "
                    f"oracle says {refereed}"
                )
            result_rows.append(
                DominanceRow(
                    x_index=i,
                    y_index=j,
                    B_xy=pairing,
                    present=True,
                    direction=verdict.direction,
                    method=verdict.method,
                    oracle_agrees=agrees,
                )
            )

        logger.info(
            f"Dominance sweep: {len(pairs)} pairs, {compared} comparable, "
            f"{disagreements} disagreements"
        )
        return DominanceSweep(
            rows=result_rows,
            pair_count=len(pairs),
            comparable=compared,
            disagreements=disagreements,
            oracle_len=oracle_len,
        )
