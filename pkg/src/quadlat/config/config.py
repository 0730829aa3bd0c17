"""
Configuration module for quadlat.
Loads environment variables and provides the configuration class.
"""
import os
from typing import Union

from dotenv import load_dotenv

from src.quadlat.utils.error_handlers import ConfigError

# Load environment variables from .env file
load_dotenv()

LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR')


def _env_int(name: str, default: int) -> Union[int, str]:
    """
    Reads an integer variable.
    Malformed values are kept as strings so validate() can report them.
    """
    raw = os.getenv(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        return raw


class Config:
    """
    Base configuration class.
    Loads all configuration from environment variables.
    """

    # Exact arithmetic
    FACTOR_BOUND = _env_int('QUADLAT_FACTOR_BOUND', 1000000)

    # Corpus generation
    SEED = _env_int('QUADLAT_SEED', 42)
    COUNT = _env_int('QUADLAT_COUNT', 200)
    MAX_ENTRY = _env_int('QUADLAT_MAX_ENTRY', 6)
    MAX_PRIME = _env_int('QUADLAT_MAX_PRIME', 97)

    # Clifford closure and equivariance sampling
    CLOSURE_MAX_ROUNDS = _env_int('QUADLAT_CLOSURE_MAX_ROUNDS', 16)
    EQUIVARIANCE_SAMPLES = _env_int('QUADLAT_EQUIVARIANCE_SAMPLES', 2)

    # Runner
    WORKERS = _env_int('QUADLAT_WORKERS', 1)
    LOG_LEVEL: str = os.getenv('QUADLAT_LOG_LEVEL', 'INFO').upper()

    # attribute -> minimum allowed value
    INT_BOUNDS = {
        'FACTOR_BOUND': 2,
        'SEED': None,
        'COUNT': 0,
        'MAX_ENTRY': 1,
        'MAX_PRIME': 2,
        'CLOSURE_MAX_ROUNDS': 1,
        'EQUIVARIANCE_SAMPLES': 0,
        'WORKERS': 1,
    }

    @classmethod
    def validate(cls) -> None:
        """
        Validates that configuration values are usable.

        Raises:
            ConfigError: If a value is not an integer, is out of range,
                or names an unknown log level
        """
        for attr, minimum in cls.INT_BOUNDS.items():
            value = getattr(cls, attr)
            name = f"QUADLAT_{attr}"
            if isinstance(value, bool) or not isinstance(value, int):
                raise ConfigError(f"{name} must be an integer, got {value!r}")
            if minimum is not None and value < minimum:
                if minimum == 0:
                    raise ConfigError(f"{name} must be non-negative")
                raise ConfigError(f"{name} must be at least {minimum}")
        if cls.LOG_LEVEL not in LOG_LEVELS:
            raise ConfigError(
                f"QUADLAT_LOG_LEVEL must be one of {', '.join(LOG_LEVELS)}, "
                f"got {cls.LOG_LEVEL!r}"
            )

    @classmethod
    def get_config(cls) -> 'Config':
        """
        Returns the configuration instance after validation.

        Returns:
            Config: Validated configuration instance
        """
        cls.validate()
        return cls()
