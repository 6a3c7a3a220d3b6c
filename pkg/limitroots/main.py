"""FastAPI application serving the limitroots pipelines."""

import logging

import numpy as np
from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from limitroots import __version__
from limitroots.api.v1.router import api_router
from limitroots.config import get_settings
from limitroots.schemas.service import HealthStatus, ServiceInfo

settings = get_settings()

logging.basicConfig(
    level=settings.LOG_LEVEL,
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
)
logger = logging.getLogger(__name__)

app = FastAPI(
    title=settings.PROJECT_NAME,
    version=__version__,
    description="Root tables, dihedral closed forms, dominance verdicts, limit-root "
    "estimates and SVG pictures for infinite Coxeter groups",
    docs_url="/docs",
    redoc_url=None,
    openapi_url="/openapi.json",
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=settings.allowed_origins_list,
    allow_credentials=False,
    allow_methods=["GET", "POST"],
    allow_headers=["*"],
)

app.include_router(api_router, prefix=settings.API_V1_PREFIX)
logger.info(
    f"Serving {len(api_router.routes)} routes under {settings.API_V1_PREFIX} "
    f"(root capacity {settings.ROOT_CAPACITY})"
)


@app.get("/", response_model=ServiceInfo)
async def root() -> ServiceInfo:
    """Service banner with the available pipeline routes."""
    return ServiceInfo(
        message="limitroots API is running",
        version=__version__,
        docs_url="/docs",
        endpoints=sorted(f"{settings.API_V1_PREFIX}{route.path}" for route in api_router.routes),
    )


@app.get("/health", response_model=HealthStatus)
async def health_check() -> HealthStatus:
    return HealthStatus(
        numpy_version=np.__version__,
        root_capacity=settings.ROOT_CAPACITY,
        oracle_word_budget=settings.ORACLE_WORD_BUDGET,
    )
