"""Service status schemas."""

from pydantic import BaseModel, Field


class ServiceInfo(BaseModel):
    message: str
    version: str
    docs_url: str
    endpoints: list[str] = Field(default_factory=list)


class HealthStatus(BaseModel):
    """Liveness plus the limits a client may hit."""

    status: str = "healthy"
    numpy_version: str
    root_capacity: int
    oracle_word_budget: int
