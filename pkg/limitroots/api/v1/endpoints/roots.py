"""Root table endpoints."""

import logging

from fastapi import APIRouter, status

from limitroots.core.errors import LimitRootsError, to_http_exception
from limitroots.schemas.errors import COMMON_RESPONSES
from limitroots.schemas.roots import RootsRequest, RootsResponse
from limitroots.services.datum_service import DatumService
from limitroots.services.export_service import ExportService
from limitroots.services.rootgen_service import RootgenService

logger = logging.getLogger(__name__)
router = APIRouter()


@router.post(
    "/roots",
    response_model=RootsResponse,
    status_code=status.HTTP_200_OK,
    responses=COMMON_RESPONSES,
)
async def generate_roots(request: RootsRequest) -> RootsResponse:
    """
    Positive roots up to ``depth`` in canonical order.

    Each record carries the witnessing word, the coefficients, |x|, the
    normalized point and its isotropy q(x-hat).
    """
    try:
        datum = DatumService.from_request(request.datum)
        table = RootgenService.generate_positive_roots(datum, request.depth)
    except LimitRootsError as e:
        logger.warning(f"Root generation rejected: {e}")
        raise to_http_exception(e) from e
    logger.info(f"Returning {len(table)} roots of depth <= {request.depth}")
    return RootsResponse(
        rank=datum.rank,
        max_depth=table.max_depth,
        count=len(table),
        roots=ExportService.root_records(datum, table),
    )
