"""Application configuration using Pydantic Settings."""

from functools import lru_cache

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Settings loaded from environment variables (prefix ``LIMITROOTS_``)."""

    model_config = SettingsConfigDict(
        env_file=".env", env_prefix="LIMITROOTS_", case_sensitive=False
    )

    # Root generation
    ROOT_CAPACITY: int = 5_000_000
    DEDUP_TOL: float = 1e-8
    DEDUP_GRID: float = 1e-6
    NEGATIVE_TOL: float = 1e-9

    # Datum validation
    BOND_TOL: float = 1e-9
    BOND_SCAN_MAX: int = 1000
    SYMMETRY_TOL: float = 1e-12
    AFFINE_TOL: float = 1e-12
    DEFAULT_INFINITY_BOND: float = -1.0

    # Dominance
    DOMINANCE_TOL: float = 1e-9
    DEFAULT_ORACLE_LEN: int = 8
    ORACLE_WORD_BUDGET: int = 5_000_000
    DEFAULT_MAX_PAIRS: int = 100_000

    # Dihedral asymptotics
    PERIODIC_MAX_ITERS: int = 200
    PERIODIC_TOL: float = 1e-12
    COLLINEAR_TOL: float = 1e-10

    # Limit roots
    ISOTROPY_TOL: float = 1e-9
    E2_CLUSTER_TOL: float = 1e-9

    # Rendering
    SVG_WIDTH: int = 800
    SVG_HEIGHT: int = 800
    CONIC_SEGMENTS: int = 512

    LOG_LEVEL: str = "INFO"

    # HTTP surface
    API_V1_PREFIX: str = "/api/v1"
    PROJECT_NAME: str = "Limit Roots API"
    ALLOWED_ORIGINS: str = "http://localhost:3000,http://localhost:8000"

    @property
    def allowed_origins_list(self) -> list[str]:
        """Parse comma-separated origins into a list."""
        return [origin.strip() for origin in self.ALLOWED_ORIGINS.split(",")]


@lru_cache
def get_settings() -> Settings:
    """Create and cache a singleton Settings instance."""
    return Settings()
