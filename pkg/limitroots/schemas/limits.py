"""Limit cloud, neighbourhood and imaginary cone schemas."""

from pydantic import BaseModel, Field

from limitroots.schemas.datum import DatumRequest


class LimitPointRecord(BaseModel):
    """One row of the limit CSV."""

    index: int
    nhat: list[float]
    q_residual: float
    provenance: str


class LimitsSummary(BaseModel):
    """Summary JSON written next to the limit CSV."""

    depth: int
    min_depth: int
    cluster_tol: float
    deep_points: int
    deep_max_residual: float
    e2_points: int
    e2_max_residual: float
    cross_validation_max_distance: float | None = Field(
        None, description="Largest distance from a deep-root cluster center to the E2 sample"
    )


class LimitsRequest(BaseModel):
    datum: DatumRequest
    depth: int = Field(12, ge=0, le=30)
    min_depth: int = Field(8, ge=0)
    cluster_tol: float = Field(1e-2, gt=0)
    pairs: int = Field(200, ge=1)
    words: int = Field(2, ge=0, le=6)


class LimitsResponse(BaseModel):
    summary: LimitsSummary
    deep: list[LimitPointRecord]
    e2: list[LimitPointRecord]


class ProbeRecord(BaseModel):
    """Certificate B(a_i, eta) for one probed point."""

    eta: list[float]
    margin: float
    certified: bool
    shrink_witness: int | None = None
    member: bool | None = Field(
        None, description="Numerical N_i membership from the root table, when requested"
    )


class NeighborhoodReport(BaseModel):
    pair: list[list[float]]
    i: int
    a_i: list[float]
    a_inf: list[float]
    probes: list[ProbeRecord]


class NeighborhoodRequest(BaseModel):
    datum: DatumRequest
    a: str = "@1"
    b: str = "@2"
    i: int = Field(1, ge=0, le=200)
    i_max: int = Field(50, ge=0, le=500)
    depth: int | None = Field(None, ge=0, le=30)
    eps: float = Field(1e-6, gt=0)
    samples: int = Field(0, ge=0, description="Extra E2 points to probe")


class ImaginaryConeReport(BaseModel):
    kappa_points: int
    orbit_points: int
    max_pairing: float = Field(..., description="max B(eta, z-hat) over cloud x samples")
