"""Numerical limit-root clouds and neighbourhood probes."""

from __future__ import annotations

import numpy as np
from pydantic import BaseModel, ConfigDict

from limitroots.models.dihedral import DihedralPair
from limitroots.models.enums import ProvenanceKind
from limitroots.models.root import NormalizedPoint


class Provenance(BaseModel):
    """Where a cloud point came from."""

    model_config = ConfigDict(frozen=True)

    kind: ProvenanceKind
    depth: int | None = None
    pair: tuple[int, int] | None = None
    word: tuple[int, ...] | None = None

    def tag(self) -> str:
        if self.kind == ProvenanceKind.deep_root:
            return f"deep_root({self.depth})"
        i, j = self.pair or (0, 0)
        if self.kind == ProvenanceKind.dihedral_pair:
            return f"dihedral_pair({i},{j})"
        word = "-".join(str(s) for s in self.word or ())
        return f"orbit({word};dihedral_pair({i},{j}))"


class LimitCloud(BaseModel):
    """Clustered numerical estimate of (part of) the limit set E."""

    model_config = ConfigDict(frozen=True)

    points: tuple[NormalizedPoint, ...]
    residuals: tuple[float, ...]
    provenance: tuple[Provenance, ...]
    cluster_tol: float
    min_depth: int | None = None

    def __len__(self) -> int:
        return len(self.points)

    @property
    def matrix(self) -> np.ndarray:
        if not self.points:
            return np.zeros((0, 0))
        return np.array([p.coords for p in self.points], dtype=float)

    @property
    def max_residual(self) -> float:
        return max(self.residuals, default=0.0)


class NeighborhoodProbe(BaseModel):
    """The root a_i = (r_a r_b)^i a used to certify membership in N_i."""

    model_config = ConfigDict(frozen=True)

    pair: DihedralPair
    index: int
    a_i: tuple[float, ...]
    certificate_margin: float | None = None


class GeometricActionReport(BaseModel):
    """Outcome of checking r_alpha . x against the line through alpha-hat and x."""

    model_config = ConfigDict(frozen=True)

    fixed_point: bool
    image: NormalizedPoint
    intersections: tuple[NormalizedPoint, ...]
    residual: float
