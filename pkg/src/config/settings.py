from pydantic_settings import BaseSettings
from pydantic import field_validator
from typing import List, Optional
from functools import lru_cache
import re


_POWER_RE = re.compile(r"^\s*(\d+)\s*\^\s*(\d+)\s*$")


def _parse_power(v):
    """Accept "2^26" style strings for integer limits"""
    if isinstance(v, str):
        match = _POWER_RE.match(v)
        if match:
            return int(match.group(1)) ** int(match.group(2))
        return v.strip().replace("_", "")
    return v


class Settings(BaseSettings):
    """Application settings"""

    # Service info
    SERVICE_NAME: str = "cyclic-codes"
    VERSION: str = "1.0.0"
    DEBUG: bool = False
    LOG_LEVEL: str = "WARNING"

    # Field construction
    FIELD_MAX_PERIOD: int = 2 ** 24
    UNIFORMITY_MAX_FIELD: int = 2 ** 14

    # Sequence analysis
    SPECTRAL_MAX_PERIOD: int = 4096
    SPOT_CHECK_INDICES: int = 64
    BCH_MAX_PERIOD: int = 2 ** 16

    # Minimum distance search
    ENUMERATION_LIMIT: int = 2 ** 26
    ENUMERATION_CHUNK: int = 2 ** 16
    DISTANCE_MAX_WORK: int = 20_000_000
    DISTANCE_MAX_WEIGHT: Optional[int] = None
    DISTANCE_MAX_SECONDS: float = 120.0

    # Corpus and sweeps
    CORPUS_MAX_WORK: int = 2_000_000
    CORPUS_SKIP_IDS: str = ""
    SWEEP_MAX_FIELD: int = 2 ** 14
    WORKERS: int = 1

    # Output
    OUTPUT_FORMAT: str = "json"

    # Validators
    @field_validator(
        "FIELD_MAX_PERIOD",
        "UNIFORMITY_MAX_FIELD",
        "SPECTRAL_MAX_PERIOD",
        "BCH_MAX_PERIOD",
        "ENUMERATION_LIMIT",
        "ENUMERATION_CHUNK",
        "DISTANCE_MAX_WORK",
        "CORPUS_MAX_WORK",
        "SWEEP_MAX_FIELD",
        mode="before",
    )
    @classmethod
    def parse_power_limits(cls, v):
        return _parse_power(v)

    @field_validator("DISTANCE_MAX_WEIGHT", mode="before")
    @classmethod
    def parse_max_weight(cls, v):
        if isinstance(v, str) and not v.strip():
            return None
        return v

    @field_validator("CORPUS_SKIP_IDS", mode="before")
    @classmethod
    def parse_skip_ids(cls, v):
        if isinstance(v, (list, tuple)):
            return ",".join(str(item) for item in v)
        return v

    @property
    def corpus_skip_ids(self) -> List[str]:
        return [item.strip() for item in self.CORPUS_SKIP_IDS.split(",") if item.strip()]

    @field_validator("OUTPUT_FORMAT")
    @classmethod
    def validate_output_format(cls, v):
        if v not in ("json", "csv"):
            raise ValueError("OUTPUT_FORMAT must be json or csv")
        return v

    model_config = {
        "env_file": ".env",
        "case_sensitive": True
    }


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance"""
    return Settings()
