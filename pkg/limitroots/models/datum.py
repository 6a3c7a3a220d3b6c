"""Coxeter datum in its free form: the simple roots are the standard basis."""

from __future__ import annotations

from functools import lru_cache

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from limitroots.models.enums import BondKind


@lru_cache(maxsize=256)
def _frozen_matrix(gram: tuple[tuple[float, ...], ...]) -> np.ndarray:
    matrix = np.array(gram, dtype=float)
    matrix.setflags(write=False)
    return matrix


class CoxeterDatum(BaseModel):
    """Rank, Gram matrix B(a_i, a_j) and bond labels m_ij (``None`` for infinity).

    Instances are built by :class:`limitroots.services.datum_service.DatumService`,
    which checks the datum conditions; the model itself only checks shapes.
    Equal data hash equally, so a datum can key caches.
    """

    model_config = ConfigDict(frozen=True)

    rank: int = Field(..., ge=1)
    gram: tuple[tuple[float, ...], ...]
    bonds: tuple[tuple[int | None, ...], ...]
    labels: tuple[str, ...]

    @model_validator(mode="after")
    def _check_shapes(self) -> CoxeterDatum:
        n = self.rank
        if len(self.gram) != n or any(len(row) != n for row in self.gram):
            raise ValueError("gram must be rank x rank")
        if len(self.bonds) != n or any(len(row) != n for row in self.bonds):
            raise ValueError("bonds must be rank x rank")
        if len(self.labels) != n:
            raise ValueError("one label per generator is required")
        return self

    @property
    def matrix(self) -> np.ndarray:
        """Read-only float64 Gram matrix."""
        return _frozen_matrix(self.gram)

    def bond(self, i: int, j: int) -> int | None:
        """Bond label m_ij for 1-based generator indices (``None`` is infinity)."""
        return self.bonds[i - 1][j - 1]


class BondClass(BaseModel):
    """Finite(m), Affine or Hyperbolic."""

    model_config = ConfigDict(frozen=True)

    kind: BondKind
    m: int | None = None
