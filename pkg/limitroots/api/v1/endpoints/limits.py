"""Limit root and neighbourhood endpoints."""

import logging

from fastapi import APIRouter, status

from limitroots.config import get_settings
from limitroots.core.errors import (
    EmptySelection,
    LimitRootsError,
    NoHyperbolicPairs,
    to_http_exception,
)
from limitroots.models.limits import LimitCloud
from limitroots.schemas.errors import COMMON_RESPONSES
from limitroots.schemas.limits import (
    LimitsRequest,
    LimitsResponse,
    LimitsSummary,
    NeighborhoodReport,
    NeighborhoodRequest,
)
from limitroots.services.datum_service import DatumService
from limitroots.services.dihedral_service import DihedralService
from limitroots.services.export_service import ExportService
from limitroots.services.limits_service import LimitsService
from limitroots.services.rootgen_service import RootgenService

logger = logging.getLogger(__name__)
router = APIRouter()


def _empty(tol: float, min_depth: int | None = None) -> LimitCloud:
    return LimitCloud(points=(), residuals=(), provenance=(), cluster_tol=tol, min_depth=min_depth)


@router.post(
    "/limits",
    response_model=LimitsResponse,
    status_code=status.HTTP_200_OK,
    responses=COMMON_RESPONSES,
)
async def limit_roots(request: LimitsRequest) -> LimitsResponse:
    """
    Deep-root clusters and the E2 sample with their cross-validation.

    Finite groups answer with empty clouds.
    """
    try:
        datum = DatumService.from_request(request.datum)
        table = RootgenService.generate_positive_roots(datum, request.depth)
        try:
            deep = LimitsService.estimate_limit_cloud(
                datum, table, request.min_depth, request.cluster_tol
            )
        except EmptySelection:
            deep = _empty(request.cluster_tol, request.min_depth)
        try:
            e2 = LimitsService.sample_e2(datum, table, request.pairs, request.words)
        except NoHyperbolicPairs:
            e2 = _empty(get_settings().E2_CLUSTER_TOL)
    except LimitRootsError as e:
        logger.warning(f"Limit estimate rejected: {e}")
        raise to_http_exception(e) from e

    summary = LimitsSummary(
        depth=request.depth,
        min_depth=request.min_depth,
        cluster_tol=request.cluster_tol,
        deep_points=len(deep),
        deep_max_residual=deep.max_residual,
        e2_points=len(e2),
        e2_max_residual=e2.max_residual,
        cross_validation_max_distance=(
            LimitsService.cross_validate(deep, e2) if len(deep) and len(e2) else None
        ),
    )
    return LimitsResponse(
        summary=summary,
        deep=ExportService.limit_records(deep),
        e2=ExportService.limit_records(e2),
    )


@router.post(
    "/neighborhood",
    response_model=NeighborhoodReport,
    status_code=status.HTTP_200_OK,
    responses=COMMON_RESPONSES,
)
async def neighborhood(request: NeighborhoodRequest) -> NeighborhoodReport:
    """Certificates B(a_i, eta) at a_inf, b_inf and optional E2 samples."""
    try:
        datum = DatumService.from_request(request.datum)
        pair = DihedralService.make_dihedral_pair(
            datum,
            RootgenService.parse_root_spec(datum, request.a),
            RootgenService.parse_root_spec(datum, request.b),
        )
        etas = [pair.a_inf, pair.b_inf]
        table = None
        if request.depth is not None:
            table = RootgenService.generate_positive_roots(datum, request.depth)
            if request.samples:
                try:
                    cloud = LimitsService.sample_e2(datum, table, request.samples, 1)
                    etas.extend(cloud.points[: request.samples])
                except NoHyperbolicPairs as e:
                    logger.warning(f"No extra probes: {e}")
        return LimitsService.neighborhood_report(
            datum,
            pair,
            request.i,
            etas,
            i_max=request.i_max,
            table=table,
            eps=request.eps if table is not None else None,
        )
    except LimitRootsError as e:
        logger.warning(f"Neighbourhood report rejected: {e}")
        raise to_http_exception(e) from e
