"""Dominance verdicts between positive roots."""

from pydantic import BaseModel, ConfigDict, model_validator

from limitroots.models.enums import Direction, VerdictMethod


class DominanceVerdict(BaseModel):
    model_config = ConfigDict(frozen=True)

    present: bool
    direction: Direction
    method: VerdictMethod
    pairing: float

    @model_validator(mode="after")
    def _direction_needs_presence(self) -> "DominanceVerdict":
        if self.direction != Direction.none and not self.present:
            raise ValueError("a dominance direction requires B(x, y) >= 1")
        return self
