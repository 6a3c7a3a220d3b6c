"""Dominance endpoints."""

import logging

from fastapi import APIRouter, status

from limitroots.core.errors import LimitRootsError, to_http_exception
from limitroots.schemas.dominance import DominanceRequest, DominanceSweep
from limitroots.schemas.errors import COMMON_RESPONSES
from limitroots.services.datum_service import DatumService
from limitroots.services.dominance_service import DominanceService
from limitroots.services.rootgen_service import RootgenService

logger = logging.getLogger(__name__)
router = APIRouter()


@router.post(
    "/dominance",
    response_model=DominanceSweep,
    status_code=status.HTTP_200_OK,
    responses=COMMON_RESPONSES,
)
async def dominance_sweep(request: DominanceRequest) -> DominanceSweep:
    """Verdicts for root pairs up to ``depth``, refereed by the word oracle."""
    try:
        datum = DatumService.from_request(request.datum)
        table = RootgenService.generate_positive_roots(datum, request.depth)
        sweep = DominanceService.dominance_sweep(
            datum, table, request.max_pairs, request.oracle_len, request.seed
        )
    except LimitRootsError as e:
        logger.warning(f"Dominance sweep rejected: {e}")
        raise to_http_exception(e) from e
    if sweep.disagreements:
        logger.warning(f"{sweep.disagreements} dominance disagreements")
    return sweep
