import logging
import sys
from functools import lru_cache
from typing import Dict, Optional

from dotenv import dotenv_values
from pydantic import BaseModel, Field, ValidationError

from models.errors import MalformedInputError

# Prefix of the keys accepted in a --config file
CONFIG_PREFIX = "CTPAIR_"

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


class EngineSettings(BaseModel):
    """Tunable limits of the numeric and search procedures"""

    precision_start_bits: int = Field(128, ge=32)
    precision_doublings: int = Field(10, ge=0)  # the precision ceiling
    denominator_growth: int = Field(10, ge=2)
    small_prime_bound: int = Field(11, ge=2)
    max_disk_depth: int = Field(256, ge=1)
    real_search_height: int = Field(64, ge=1)
    make_unit_height: int = Field(50, ge=1)
    normalize_leading: bool = True
    verify_identities: bool = False
    max_workers: int = Field(1, ge=1)


@lru_cache(maxsize=1)
def get_settings() -> EngineSettings:
    """Shared default settings, built once per process"""
    return EngineSettings()


def load_settings(path: Optional[str] = None, overrides: Optional[Dict] = None) -> EngineSettings:
    """
    Build settings from an optional key=value file plus explicit overrides.

    Args:
        path: file with CTPAIR_<FIELD>=value lines; read without touching os.environ
        overrides: values taking precedence over the file (CLI flags)

    Returns:
        EngineSettings
    """
    values = {}
    if path:
        for key, value in dotenv_values(path).items():
            if not key.upper().startswith(CONFIG_PREFIX):
                logging.getLogger(__name__).warning("ignoring config key %s", key)
                continue
            field = key[len(CONFIG_PREFIX):].lower()
            if field not in EngineSettings.model_fields:
                raise MalformedInputError(f"unknown setting {key} in {path}")
            values[field] = value
    values.update({k: v for k, v in (overrides or {}).items() if v is not None})
    if not values:
        return get_settings()
    try:
        return EngineSettings(**values)
    except ValidationError as e:
        raise MalformedInputError(f"invalid settings: {e}") from e


def configure_logging(verbose: bool = False):
    """Send log records to stderr; stdout is reserved for reports"""
    root = logging.getLogger()
    for handler in list(root.handlers):
        root.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root.addHandler(handler)
    root.setLevel(logging.DEBUG if verbose else logging.WARNING)
