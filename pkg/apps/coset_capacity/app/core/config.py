from __future__ import annotations

from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="COSETCAP_", env_file=".env", env_file_encoding="utf-8", extra="ignore"
    )

    app_name: str = "cosetcap"
    log_level: str = "INFO"

    max_workers: int = Field(default=4, ge=1)

    # 4^n enumeration guard; 4^12 ~ 1.7e7 errors
    enumeration_cap: int = Field(default=12, ge=1, le=16)
    shard_min_qubits: int = Field(default=8, ge=2)

    probability_tolerance: float = 1e-12
    normalization_tolerance: float = 1e-10
    merge_quantum: float = 1e-12

    threshold_scan_step: float = Field(default=1e-3, gt=0)
    threshold_tolerance: float = Field(default=1e-7, gt=0)
    threshold_bracket_low: float = Field(default=0.75, ge=0, le=1)
    threshold_bracket_high: float = Field(default=0.999, ge=0, le=1)

    @property
    def threshold_bracket(self) -> tuple[float, float]:
        return (self.threshold_bracket_low, self.threshold_bracket_high)


@lru_cache
def get_settings() -> Settings:
    return Settings()
