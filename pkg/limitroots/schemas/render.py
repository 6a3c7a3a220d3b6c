"""Render request schema."""

from pydantic import BaseModel, Field, field_validator

from limitroots.models.enums import Layer, Projection
from limitroots.schemas.datum import DatumRequest


class RenderSpec(BaseModel):
    """Canvas, projection and layers of an SVG picture."""

    width: int = Field(800, ge=64)
    height: int = Field(800, ge=64)
    projection: Projection | None = Field(
        None, description="Defaults from the rank: 2 -> segment, 3 -> triangle, else polygon"
    )
    layers: list[Layer] = Field(default_factory=lambda: [Layer.roots])

    @field_validator("layers")
    @classmethod
    def _unique_layers(cls, layers: list[Layer]) -> list[Layer]:
        return sorted(set(layers), key=lambda layer: list(Layer).index(layer))


class RenderRequest(BaseModel):
    datum: DatumRequest
    depth: int = Field(6, ge=0, le=20)
    spec: RenderSpec = Field(default_factory=RenderSpec)
