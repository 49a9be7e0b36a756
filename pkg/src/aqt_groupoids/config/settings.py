"""Application settings."""

from __future__ import annotations

from functools import lru_cache
from pathlib import Path
from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

PROJECT_ROOT = Path(__file__).resolve().parents[3]


class Settings(BaseSettings):
    """Runtime settings loaded from environment variables."""

    app_name: str = "aqt-groupoids"
    # Thread-pool width for independent axiom checks.
    check_workers: int = Field(default=4, ge=1)
    # Total-algebra dimension up to which checkers also run every basis pair/triple.
    exhaustive_dim_limit: int = Field(default=8, ge=1)
    report_dir: Path = Path("reports")
    default_format: Literal["json", "text"] = "text"
    log_level: str = "WARNING"
    catalog_dir: Path | None = None

    model_config = SettingsConfigDict(
        env_prefix="AQT_GROUPOIDS_",
        extra="ignore",
        env_file=(PROJECT_ROOT / ".env", PROJECT_ROOT / ".env.local"),
        env_file_encoding="utf-8",
    )

    def resolved_catalog_dir(self) -> Path:
        return self.catalog_dir or Path(__file__).resolve().parents[1] / "catalog" / "data"


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return Settings()
