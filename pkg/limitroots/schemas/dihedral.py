"""Dihedral report schemas."""

from pydantic import BaseModel, Field

from limitroots.models.enums import DihedralKind
from limitroots.schemas.datum import DatumRequest


class ConvergenceRow(BaseModel):
    """Distance of one normalized sequence root to a_inf."""

    i: int = Field(..., ge=0)
    distance_to_a_inf: float
    ratio: float | None = Field(None, description="distance_i / distance_(i-1)")


class InterlaceReport(BaseModel):
    """k = min{i | (r_b r_a)^(i+1) y negative} and the seed c = (r_b r_a)^k y."""

    k: int | None
    seed: tuple[float, ...] | None
    distance_to_a_inf: float


class DihedralReport(BaseModel):
    """Everything the dihedral command reports about W_(a,b)."""

    a: list[float]
    b: list[float]
    pairing: float = Field(..., description="B(a, b)")
    kind: DihedralKind
    theta: float | None = Field(None, description="arcosh(-B(a, b)); absent for affine pairs")
    a_inf: list[float]
    b_inf: list[float]
    pairings: list[float] | None = Field(
        None, description="B(a_inf, a), B(a_inf, b), B(b_inf, a), B(b_inf, b)"
    )
    convergence: list[ConvergenceRow] = Field(default_factory=list)


class DihedralRequest(BaseModel):
    datum: DatumRequest
    a: str = Field("@1", description="Root spec WORD@k, e.g. '1,2@1'")
    b: str = Field("@2", description="Root spec WORD@k")
    iters: int = Field(20, ge=0, le=500)
