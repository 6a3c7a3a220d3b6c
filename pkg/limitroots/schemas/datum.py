"""Datum request schema shared by every endpoint."""

from typing import Literal

from pydantic import BaseModel, Field, model_validator


class DatumRequest(BaseModel):
    """A datum given either as a Gram matrix or as a Coxeter matrix.

    For ``format == "coxeter"`` entries are bond labels (0 for infinity);
    ``infinity_bond`` and ``overrides`` (1-based ``[i, j, value]``) fill the
    infinite bonds.
    """

    format: Literal["gram", "coxeter"] = "gram"
    matrix: list[list[float]] = Field(..., min_length=1)
    infinity_bond: float | None = Field(None, le=-1.0)
    overrides: list[tuple[int, int, float]] = Field(default_factory=list)
    labels: list[str] | None = None

    model_config = {
        "json_schema_extra": {
            "examples": [
                {"format": "gram", "matrix": [[1, -1.25], [-1.25, 1]]},
                {"format": "coxeter", "matrix": [[1, 3, 4], [3, 1, 3], [4, 3, 1]]},
            ]
        }
    }

    @model_validator(mode="after")
    def _gram_has_no_bond_options(self) -> "DatumRequest":
        if self.format == "gram" and (self.overrides or self.infinity_bond is not None):
            raise ValueError("infinity_bond and overrides only apply to Coxeter matrices")
        return self
