"""SVG rendering endpoint."""

import logging

from fastapi import APIRouter, Response, status

from limitroots.core.errors import LimitRootsError, to_http_exception
from limitroots.schemas.errors import COMMON_RESPONSES
from limitroots.schemas.render import RenderRequest
from limitroots.services.datum_service import DatumService
from limitroots.services.render_service import RenderService
from limitroots.services.rootgen_service import RootgenService

logger = logging.getLogger(__name__)
router = APIRouter()


@router.post(
    "/render",
    status_code=status.HTTP_200_OK,
    responses={**COMMON_RESPONSES, 200: {"content": {"image/svg+xml": {}}}},
    response_class=Response,
)
async def render(request: RenderRequest) -> Response:
    """SVG picture of the normalized roots and the requested layers."""
    try:
        datum = DatumService.from_request(request.datum)
        RenderService.resolve_projection(datum, request.spec)
        table = RootgenService.generate_positive_roots(datum, request.depth)
        svg = RenderService.render_svg(datum, table, request.spec)
    except LimitRootsError as e:
        logger.warning(f"Render rejected: {e}")
        raise to_http_exception(e) from e
    return Response(content=svg, media_type="image/svg+xml")
