"""Root table schemas."""

from pydantic import BaseModel, Field

from limitroots.schemas.datum import DatumRequest


class RootRecord(BaseModel):
    """One row of the root dump."""

    index: int
    depth: int
    word: list[int]
    coeffs: list[float]
    norm_sum: float
    nhat: list[float]
    q_normalized: float


class RootsRequest(BaseModel):
    datum: DatumRequest
    depth: int = Field(..., ge=0, le=40)


class RootsResponse(BaseModel):
    rank: int
    max_depth: int
    count: int
    roots: list[RootRecord]
