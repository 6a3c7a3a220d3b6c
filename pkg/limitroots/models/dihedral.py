"""Infinite dihedral reflection subgroups W_{a,b}."""

from __future__ import annotations

import math

import numpy as np
from pydantic import BaseModel, ConfigDict

from limitroots.models.enums import DihedralKind
from limitroots.models.root import NormalizedPoint


class DihedralPair(BaseModel):
    """Two positive roots with B(a, b) <= -1 and their limit points.

    ``theta`` is ``None`` for affine pairs, where ``a_inf == b_inf``.
    """

    model_config = ConfigDict(frozen=True)

    a: tuple[float, ...]
    b: tuple[float, ...]
    pairing: float
    kind: DihedralKind
    theta: float | None
    a_inf: NormalizedPoint
    b_inf: NormalizedPoint

    @property
    def a_vector(self) -> np.ndarray:
        return np.array(self.a, dtype=float)

    @property
    def b_vector(self) -> np.ndarray:
        return np.array(self.b, dtype=float)

    @property
    def norm_a(self) -> float:
        return float(sum(self.a))

    @property
    def norm_b(self) -> float:
        return float(sum(self.b))

    @property
    def cosh_theta(self) -> float:
        return -self.pairing

    @property
    def sinh_theta(self) -> float:
        return math.sqrt(max(self.pairing * self.pairing - 1.0, 0.0))

    @property
    def is_hyperbolic(self) -> bool:
        return self.kind == DihedralKind.hyperbolic
