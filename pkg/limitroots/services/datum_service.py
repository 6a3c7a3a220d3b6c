"""Datum service - parsing, validation, the bilinear form and reflections."""

from __future__ import annotations

import logging
import math
from collections.abc import Callable, Iterable, Sequence

import numpy as np

from limitroots.config import get_settings
from limitroots.core.errors import (
    DimensionMismatch,
    IndexOutOfRange,
    InvalidDatum,
    ParseError,
)
from limitroots.models.datum import BondClass, CoxeterDatum
from limitroots.models.enums import BondKind
from limitroots.schemas.datum import DatumRequest

logger = logging.getLogger(__name__)


def _content_lines(text: str) -> list[str]:
    """Non-blank lines that are not '#' comments."""
    return [
        line.strip()
        for line in text.splitlines()
        if line.strip() and not line.lstrip().startswith("#")
    ]


def _read_square(text: str, parse: Callable[[str], float]) -> list[list[float]]:
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty document")
    try:
        n = int(lines[0])
    except ValueError as e:
        raise ParseError(f"first line must be the rank, got {lines[0]!r}") from e
    if n < 1:
        raise ParseError(f"rank must be positive, got {n}")
    if len(lines) != n + 1:
        raise ParseError(f"expected {n} matrix rows, got {len(lines) - 1}")
    rows: list[list[float]] = []
    for number, line in enumerate(lines[1:], start=1):
        fields = line.split()
        if len(fields) != n:
            raise ParseError(f"row {number} has {len(fields)} entries, expected {n}")
        try:
            rows.append([parse(field) for field in fields])
        except ValueError as e:
            raise ParseError(f"row {number}: {e}") from e
    return rows


def _parse_int(field: str) -> int:
    value = float(field)
    if not value.is_integer():
        raise ValueError(f"{field!r} is not an integer")
    return int(value)


def _parse_real(field: str) -> float:
    value = float(field)
    if not math.isfinite(value):
        raise ValueError(f"{field!r} is not a finite number")
    return value


def _default_labels(n: int) -> tuple[str, ...]:
    return tuple(f"s{i}" for i in range(1, n + 1))


class DatumService:
    """Service for building and evaluating free Coxeter data."""

    @staticmethod
    def recognize_bond(value: float) -> int | None:
        """Bond label for an off-diagonal Gram entry, ``None`` meaning infinity.

        Scans m = 2..BOND_SCAN_MAX for -cos(pi/m) within BOND_TOL.

        Raises:
            InvalidDatum: entry in (-1, 1] that is not -cos(pi/m)
        """
        settings = get_settings()
        if value <= -1.0 + settings.AFFINE_TOL:
            return None
        ms = np.arange(2, settings.BOND_SCAN_MAX + 1)
        gaps = np.abs(-np.cos(np.pi / ms) - value)
        best = int(np.argmin(gaps))
        if gaps[best] <= settings.BOND_TOL:
            return int(ms[best])
        raise InvalidDatum(
            f"off-diagonal entry {value!r} is neither -cos(pi/m) nor <= -1"
        )

    @staticmethod
    def from_gram(
        gram: Sequence[Sequence[float]], labels: Sequence[str] | None = None
    ) -> CoxeterDatum:
        """Validate a Gram matrix and derive its bond table."""
        settings = get_settings()
        matrix = np.array(gram, dtype=float)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.size == 0:
            raise InvalidDatum(f"gram must be a non-empty square matrix, got {matrix.shape}")
        n = matrix.shape[0]
        if not np.all(np.isfinite(matrix)):
            raise InvalidDatum("gram entries must be finite")
        if np.max(np.abs(matrix - matrix.T)) > settings.SYMMETRY_TOL:
            raise InvalidDatum("gram matrix is not symmetric")
        if np.max(np.abs(np.diag(matrix) - 1.0)) > settings.SYMMETRY_TOL:
            raise InvalidDatum("diagonal entries B(a, a) must equal 1")

        bonds: list[list[int | None]] = [[1] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                m = DatumService.recognize_bond(float(matrix[i, j]))
                bonds[i][j] = bonds[j][i] = m

        labels = tuple(labels) if labels is not None else _default_labels(n)
        if len(labels) != n:
            raise InvalidDatum(f"expected {n} labels, got {len(labels)}")
        datum = CoxeterDatum(
            rank=n,
            gram=tuple(tuple(float(x) for x in row) for row in matrix),
            bonds=tuple(tuple(row) for row in bonds),
            labels=labels,
        )
        logger.debug(f"Built rank-{n} datum with bonds {datum.bonds}")
        return datum

    @staticmethod
    def from_coxeter(
        matrix: Sequence[Sequence[int]],
        infinity_bond: float | None = None,
        overrides: Iterable[tuple[int, int, float]] = (),
        labels: Sequence[str] | None = None,
    ) -> CoxeterDatum:
        """Gram matrix from a Coxeter matrix (0 meaning infinity).

        Finite bonds give -cos(pi/m); infinite bonds take ``infinity_bond``
        unless an override (1-based ``i, j``) supplies another value <= -1.
        """
        if infinity_bond is None:
            infinity_bond = get_settings().DEFAULT_INFINITY_BOND
        if infinity_bond > -1.0:
            raise InvalidDatum(f"infinity bond must be <= -1, got {infinity_bond}")
        m = np.array(matrix, dtype=int)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.size == 0:
            raise InvalidDatum(f"Coxeter matrix must be square, got {m.shape}")
        n = m.shape[0]
        if not np.array_equal(m, m.T):
            raise InvalidDatum("Coxeter matrix is not symmetric")
        if np.any(np.diag(m) != 1):
            raise InvalidDatum("Coxeter matrix diagonal must be 1")

        gram = np.eye(n)
        for i in range(n):
            for j in range(i + 1, n):
                label = int(m[i, j])
                if label == 0:
                    gram[i, j] = gram[j, i] = infinity_bond
                elif label >= 2:
                    gram[i, j] = gram[j, i] = -math.cos(math.pi / label)
                else:
                    raise InvalidDatum(
                        f"bond m_{i + 1}{j + 1} = {label} is illegal (need >= 2 or 0)"
                    )

        for i, j, value in overrides:
            if not (1 <= i <= n and 1 <= j <= n) or i == j:
                raise InvalidDatum(f"override ({i}, {j}) is not an off-diagonal entry")
            if m[i - 1, j - 1] != 0:
                raise InvalidDatum(f"override ({i}, {j}) targets a finite bond")
            if value > -1.0:
                raise InvalidDatum(f"override ({i}, {j}) = {value} must be <= -1")
            gram[i - 1, j - 1] = gram[j - 1, i - 1] = value

        return DatumService.from_gram(gram, labels)

    @staticmethod
    def parse_gram_matrix(text: str) -> CoxeterDatum:
        """Parse the Gram file format: rank line, then rank rows of decimals."""
        return DatumService.from_gram(_read_square(text, _parse_real))

    @staticmethod
    def parse_coxeter_matrix(
        text: str,
        infinity_bond: float | None = None,
        overrides: Iterable[tuple[int, int, float]] = (),
    ) -> CoxeterDatum:
        """Parse the Coxeter file format: integers, 0 meaning infinity."""
        rows = _read_square(text, _parse_int)
        return DatumService.from_coxeter(rows, infinity_bond, overrides)

    @staticmethod
    def parse_overrides(text: str) -> list[tuple[int, int, float]]:
        """Parse ``i j value`` lines (1-based indices)."""
        overrides: list[tuple[int, int, float]] = []
        for line in _content_lines(text):
            fields = line.split()
            if len(fields) != 3:
                raise ParseError(f"override line {line!r} must read 'i j value'")
            try:
                overrides.append(
                    (_parse_int(fields[0]), _parse_int(fields[1]), _parse_real(fields[2]))
                )
            except ValueError as e:
                raise ParseError(f"override line {line!r}: {e}") from e
        return overrides

    @staticmethod
    def check_vector(datum: CoxeterDatum, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=float)
        if v.shape != (datum.rank,):
            raise DimensionMismatch(
                f"vector of shape {v.shape} does not match rank {datum.rank}"
            )
        return v

    @staticmethod
    def check_generator(datum: CoxeterDatum, s: int) -> int:
        if not 1 <= s <= datum.rank:
            raise IndexOutOfRange(f"generator {s} outside 1..{datum.rank}")
        return s

    @staticmethod
    def bilinear(datum: CoxeterDatum, u: np.ndarray, v: np.ndarray) -> float:
        """B(u, v) = u^T G v."""
        u = DatumService.check_vector(datum, u)
        v = DatumService.check_vector(datum, v)
        return float(u @ datum.matrix @ v)

    @staticmethod
    def reflect(datum: CoxeterDatum, s: int, v: np.ndarray) -> np.ndarray:
        """r_s(v) = v - 2 B(v, a_s) a_s for the simple root a_s = e_s."""
        DatumService.check_generator(datum, s)
        v = DatumService.check_vector(datum, v)
        image = v.copy()
        image[s - 1] -= 2.0 * float(datum.matrix[s - 1] @ v)
        return image

    @staticmethod
    def reflect_in_root(datum: CoxeterDatum, alpha: np.ndarray, v: np.ndarray) -> np.ndarray:
        """r_alpha(v) = v - 2 B(v, alpha) alpha for a root alpha."""
        alpha = DatumService.check_vector(datum, alpha)
        v = DatumService.check_vector(datum, v)
        return v - 2.0 * float(v @ datum.matrix @ alpha) * alpha

    @staticmethod
    def classify_bond(datum: CoxeterDatum, i: int, j: int) -> BondClass:
        """Finite(m), Affine (B = -1) or Hyperbolic (B < -1)."""
        DatumService.check_generator(datum, i)
        DatumService.check_generator(datum, j)
        if i == j:
            raise IndexOutOfRange("classify_bond needs two distinct generators")
        m = datum.bond(i, j)
        if m is not None:
            return BondClass(kind=BondKind.finite, m=m)
        value = datum.gram[i - 1][j - 1]
        if abs(value + 1.0) <= get_settings().AFFINE_TOL:
            return BondClass(kind=BondKind.affine)
        return BondClass(kind=BondKind.hyperbolic)

    @staticmethod
    def detect_format(path: str) -> str:
        """``coxeter`` for .cox/.coxeter files, ``gram`` otherwise."""
        lowered = path.lower()
        return "coxeter" if lowered.endswith((".cox", ".coxeter")) else "gram"

    @staticmethod
    def load(
        text: str,
        fmt: str = "gram",
        infinity_bond: float | None = None,
        overrides: Iterable[tuple[int, int, float]] = (),
    ) -> CoxeterDatum:
        """Parse a datum document in the given format."""
        if fmt == "coxeter":
            return DatumService.parse_coxeter_matrix(text, infinity_bond, overrides)
        if fmt != "gram":
            raise ParseError(f"unknown datum format {fmt!r}")
        if infinity_bond is not None or list(overrides):
            raise ParseError("infinity bond and overrides only apply to Coxeter matrices")
        return DatumService.parse_gram_matrix(text)

    @staticmethod
    def from_request(request: DatumRequest) -> CoxeterDatum:
        """Datum from the HTTP request schema."""
        if request.format == "coxeter":
            if any(not float(x).is_integer() for row in request.matrix for x in row):
                raise ParseError("Coxeter matrix entries must be integers")
            matrix = [[int(x) for x in row] for row in request.matrix]
            return DatumService.from_coxeter(
                matrix, request.infinity_bond, request.overrides, request.labels
            )
        return DatumService.from_gram(request.matrix, request.labels)
