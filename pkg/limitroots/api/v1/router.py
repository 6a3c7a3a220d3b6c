"""Main API v1 router."""

from fastapi import APIRouter

from limitroots.api.v1.endpoints import dihedral, dominance, limits, render, roots

api_router = APIRouter()

# Include endpoints
api_router.include_router(roots.router, tags=["roots"])
api_router.include_router(dihedral.router, tags=["dihedral"])
api_router.include_router(dominance.router, tags=["dominance"])
api_router.include_router(limits.router, tags=["limits"])
api_router.include_router(render.router, tags=["render"])
