"""Dihedral subgroup endpoints."""

import logging

from fastapi import APIRouter, status

from limitroots.core.errors import LimitRootsError, to_http_exception
from limitroots.schemas.dihedral import DihedralReport, DihedralRequest
from limitroots.schemas.errors import COMMON_RESPONSES
from limitroots.services.datum_service import DatumService
from limitroots.services.dihedral_service import DihedralService
from limitroots.services.rootgen_service import RootgenService

logger = logging.getLogger(__name__)
router = APIRouter()


@router.post(
    "/dihedral",
    response_model=DihedralReport,
    status_code=status.HTTP_200_OK,
    responses=COMMON_RESPONSES,
)
async def dihedral_report(request: DihedralRequest) -> DihedralReport:
    """
    Closed forms of W_(a,b) for the roots given as ``WORD@k`` specs.

    **Example:** the rank-2 datum with B(a, b) = -1.25 and ``a = "@1"``,
    ``b = "@2"`` gives theta = ln 2, a_inf = (2/3, 1/3), b_inf = (1/3, 2/3).
    """
    try:
        datum = DatumService.from_request(request.datum)
        a = RootgenService.parse_root_spec(datum, request.a)
        b = RootgenService.parse_root_spec(datum, request.b)
        pair = DihedralService.make_dihedral_pair(datum, a, b)
        return DihedralService.dihedral_report(datum, pair, request.iters)
    except LimitRootsError as e:
        logger.warning(f"Dihedral report rejected: {e}")
        raise to_http_exception(e) from e
