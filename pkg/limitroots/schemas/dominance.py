"""Dominance report schemas."""

from pydantic import BaseModel, Field

from limitroots.models.enums import Direction, VerdictMethod
from limitroots.schemas.datum import DatumRequest


class DominanceRow(BaseModel):
    """One line of the dominance CSV."""

    x_index: int
    y_index: int
    B_xy: float
    present: bool
    direction: Direction
    method: VerdictMethod
    oracle_agrees: bool | None = None


class DominanceSweep(BaseModel):
    rows: list[DominanceRow]
    pair_count: int
    comparable: int
    disagreements: int
    oracle_len: int


class DominanceRequest(BaseModel):
    datum: DatumRequest
    depth: int = Field(4, ge=1, le=12)
    max_pairs: int = Field(10_000, ge=1)
    oracle_len: int = Field(8, ge=1, le=12)
    seed: int = 0
