"""Error response schemas for OpenAPI documentation."""

from pydantic import BaseModel, Field


class ErrorDetail(BaseModel):
    """Standard error response."""

    detail: str = Field(..., description="Error class and message describing what went wrong")

    model_config = {
        "json_schema_extra": {
            "examples": [
                {"detail": "NotInfiniteDihedral: B(a, b) = -0.5 > -1"},
                {"detail": "CapacityExceeded: more than 200000 roots"},
            ]
        }
    }


class ValidationErrorDetail(BaseModel):
    """Validation error response (422)."""

    detail: list[dict] | str = Field(
        ...,
        description="List of validation errors, or the message of a rejected datum",
    )

    model_config = {
        "json_schema_extra": {
            "examples": [
                {
                    "detail": [
                        {
                            "loc": ["body", "datum", "matrix"],
                            "msg": "matrix must be square",
                            "type": "value_error",
                        }
                    ]
                },
                {"detail": "InvalidDatum: diagonal entry 2 is 0.5, expected 1"},
            ]
        }
    }


# Common error response configurations for FastAPI endpoints
COMMON_RESPONSES = {
    409: {
        "model": ErrorDetail,
        "description": "Numeric failure or unmet precondition (e.g. finite dihedral pair)",
    },
    413: {
        "model": ErrorDetail,
        "description": "Root or word capacity exceeded",
    },
    422: {
        "model": ValidationErrorDetail,
        "description": "Validation error - request body or datum is invalid",
    },
}
