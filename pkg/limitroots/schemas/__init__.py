"""Pydantic schemas for request/response validation."""

from limitroots.schemas.datum import DatumRequest
from limitroots.schemas.dihedral import DihedralReport, DihedralRequest
from limitroots.schemas.dominance import DominanceRequest, DominanceSweep
from limitroots.schemas.limits import (
    LimitsRequest,
    LimitsResponse,
    NeighborhoodReport,
    NeighborhoodRequest,
)
from limitroots.schemas.render import RenderRequest, RenderSpec
from limitroots.schemas.roots import RootsRequest, RootsResponse

__all__ = [
    "DatumRequest",
    "DihedralReport",
    "DihedralRequest",
    "DominanceRequest",
    "DominanceSweep",
    "LimitsRequest",
    "LimitsResponse",
    "NeighborhoodReport",
    "NeighborhoodRequest",
    "RenderRequest",
    "RenderSpec",
    "RootsRequest",
    "RootsResponse",
]
