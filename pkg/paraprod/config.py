"""
Centralized configuration management for paraprod.

Settings are read from PARAPROD_* environment variables, an optional .env
file and the defaults below. Numerical defaults feed QuadratureConfig and the
guards; the digest of the numerical settings goes into every run manifest.
"""

import hashlib
import json
from typing import Literal, Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class ParaprodConfig(BaseSettings):
    """
    Centralized configuration for paraprod.

    Loads settings from environment variables and .env file.
    """

    model_config = SettingsConfigDict(
        env_file='.env',
        env_file_encoding='utf-8',
        case_sensitive=False,
        populate_by_name=True,
        extra='ignore'
    )

    # Parallelism
    threads: int = Field(1, ge=1, alias='PARAPROD_THREADS')

    # Logging
    log_level: Literal['DEBUG', 'INFO', 'WARNING', 'ERROR'] = Field('INFO', alias='PARAPROD_LOG_LEVEL')

    # Guards
    max_degree: int = Field(4096, ge=1, alias='PARAPROD_MAX_DEGREE')
    max_terms: int = Field(1_000_000, ge=1, alias='PARAPROD_MAX_TERMS')

    # Quadrature defaults
    n_theta: int = Field(256, ge=2, alias='PARAPROD_N_THETA')
    radial_panels: int = Field(24, ge=1, alias='PARAPROD_RADIAL_PANELS')
    grading: float = Field(0.5, gt=0., lt=1., alias='PARAPROD_GRADING')
    rel_tol: float = Field(1e-8, gt=0., alias='PARAPROD_REL_TOL')

    # Tent space inner grid
    tent_radii: int = Field(256, ge=8, alias='PARAPROD_TENT_RADII')
    tent_angles: int = Field(1024, ge=8, alias='PARAPROD_TENT_ANGLES')

    # Truncated non-polynomial functions
    default_cap: int = Field(256, ge=1, alias='PARAPROD_DEFAULT_CAP')

    def digest(self) -> str:
        """Short sha256 of the settings that influence numerical results."""
        data = self.model_dump(exclude={'log_level'})
        encoded = json.dumps(data, sort_keys=True).encode('utf-8')
        return hashlib.sha256(encoded).hexdigest()[:16]


# Global config instance
_config: Optional[ParaprodConfig] = None


def get_config(reload: bool = False) -> ParaprodConfig:
    """
    Get the global configuration instance.

    Args:
        reload: Force reload configuration from environment

    Returns:
        ParaprodConfig instance
    """
    global _config
    if _config is None or reload:
        _config = ParaprodConfig()
    return _config


def set_config(config: Optional[ParaprodConfig]):
    """Replace the global configuration (None restores lazy loading)."""
    global _config
    _config = config


# Convenience exports
__all__ = [
    'ParaprodConfig',
    'get_config',
    'set_config'
]
