"""Immutable domain models."""

from limitroots.models.datum import BondClass, CoxeterDatum
from limitroots.models.dihedral import DihedralPair
from limitroots.models.dominance import DominanceVerdict
from limitroots.models.enums import (
    BondKind,
    DihedralKind,
    Direction,
    Layer,
    Projection,
    ProvenanceKind,
    Side,
    VerdictMethod,
)
from limitroots.models.limits import (
    GeometricActionReport,
    LimitCloud,
    NeighborhoodProbe,
    Provenance,
)
from limitroots.models.root import NormalizedPoint, Root, RootTable

__all__ = [
    "BondClass",
    "CoxeterDatum",
    "DihedralPair",
    "DominanceVerdict",
    "BondKind",
    "DihedralKind",
    "Direction",
    "Layer",
    "Projection",
    "ProvenanceKind",
    "Side",
    "VerdictMethod",
    "GeometricActionReport",
    "LimitCloud",
    "NeighborhoodProbe",
    "Provenance",
    "NormalizedPoint",
    "Root",
    "RootTable",
]
