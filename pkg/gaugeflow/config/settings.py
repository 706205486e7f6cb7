"""
Configuration Management for gaugeflow
"""

from typing import Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings configuration"""

    model_config = SettingsConfigDict(
        env_file=".env", case_sensitive=False, extra="ignore"
    )

    # Application
    app_name: str = Field(default="gaugeflow", alias="APP_NAME")
    debug: bool = Field(default=False, alias="DEBUG")
    log_level: str = Field(default="INFO", alias="LOG_LEVEL")
    log_dir: str = Field(default="logs", alias="LOG_DIR")

    # Numerics
    group_epsilon: float = Field(default=1e-9, alias="GROUP_EPSILON")
    search_budget: int = Field(default=20000, alias="SEARCH_BUDGET")
    holonomy_product_depth: int = Field(default=2, alias="HOLONOMY_PRODUCT_DEPTH")
    exhaustive_spin_limit: int = Field(default=20, alias="EXHAUSTIVE_SPIN_LIMIT")
    path_weight_base: float = Field(default=2.0, alias="PATH_WEIGHT_BASE")

    # Runs
    default_seed: int = Field(default=0, alias="DEFAULT_SEED")
    max_threads: int = Field(default=1, alias="MAX_THREADS")
    output_dir: str = Field(default="results", alias="OUTPUT_DIR")
    run_label: Optional[str] = Field(default=None, alias="RUN_LABEL")


# Global settings instance
settings = Settings()


def get_settings() -> Settings:
    """Get application settings"""
    return settings
