"""
Application Configuration
Numeric tolerances, capacity guards and logging, overridable through
QD_* environment variables or a .env file.
"""

from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """Toolkit settings loaded from environment variables."""

    # Verification
    TOLERANCE: float = 1e-10  # QD_TOLERANCE
    NUMERIC_TOLERANCE: float = 1e-9  # character tables, reciprocity
    DROP_TOLERANCE: float = 1e-14  # sparse entries below this are dropped

    # Spectra
    DEGENERACY_TOLERANCE: float = 1e-8
    SECTOR_OVERLAP_THRESHOLD: float = 1 - 1e-8
    FULL_DIAG_MAX_DIM: int = 4096
    LOWK_MAX_DIM: int = 2**26
    LOWK_MAX_K: int = 64

    # Capacity
    MAX_GROUP_ORDER: int = 5040
    FULL_ASSOCIATIVITY_MAX_ORDER: int = 256
    MAX_HILBERT_DIM: int = 2**26
    ADDRESSING_LIMIT: int = 2**31
    OPERATOR_CACHE_SIZE: int = 256  # vertex operators and flux tables kept per OperatorService

    # Determinism
    RANDOM_SEED: int = 20170101

    LOG_LEVEL: str = "WARNING"

    class Config:
        env_prefix = "QD_"
        env_file = ".env"


settings = Settings()
