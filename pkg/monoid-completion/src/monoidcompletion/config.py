"""Settings for computations, loaded from JSON

The bundled `data/default_config.json` is read first. A user file given
explicitly, or through the MONOIDCOMPLETION_CONFIG environment variable,
overrides individual keys.
"""

import dataclasses
import json
import logging
import os
from importlib import resources
from typing import Optional

from .exceptions import InputError

logger = logging.getLogger(__name__)

CONFIG_ENV_VAR = "MONOIDCOMPLETION_CONFIG"


@dataclasses.dataclass(frozen=True)
class Settings:
    """Budgets and defaults

    :param max_degree: Truncation degree of nerves and diagonals
    :param levels: Number of simplicial monoid levels checked
    :param step_limit: Maximum rewrite steps when simplifying a presentation
    :param max_simplices: Largest number of simplices enumerated in one degree
    :param two_step_max_cells: Above this rows*cols, homology switches to the cokernel method
    """

    max_degree: int = 5
    levels: int = 4
    step_limit: int = 10000
    max_simplices: int = 2_000_000
    two_step_max_cells: int = 4_000_000

    def replace(self, **changes) -> "Settings":
        """Copy with the non-None changes applied"""
        return dataclasses.replace(self, **{k: v for k, v in changes.items() if v is not None})


def bundled_file(name: str):
    """A file shipped in the package data directory"""
    return resources.files(__package__).joinpath("data").joinpath(name)


def _read_json(text: str, origin: str) -> dict:
    try:
        config = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"Invalid JSON in {origin}: {exc}") from exc
    if not isinstance(config, dict):
        raise InputError(f"{origin} must contain a JSON object")
    known = {field.name for field in dataclasses.fields(Settings)}
    unknown = sorted(set(config) - known)
    if unknown:
        raise InputError(f"Unknown settings in {origin}: {', '.join(unknown)}")
    for key, value in config.items():
        if not isinstance(value, int) or isinstance(value, bool) or value < 0:
            raise InputError(f"Setting {key} in {origin} must be a nonnegative integer")
    return config


def _overlay(settings: Settings, config: dict) -> Settings:
    return Settings(
        max_degree=config.get("max_degree", settings.max_degree),
        levels=config.get("levels", settings.levels),
        step_limit=config.get("step_limit", settings.step_limit),
        max_simplices=config.get("max_simplices", settings.max_simplices),
        two_step_max_cells=config.get("two_step_max_cells", settings.two_step_max_cells),
    )


def load_settings(path: Optional[str] = None) -> Settings:
    """Load the bundled defaults, then a user file if one is given

    :param path: A JSON file. Defaults to the MONOIDCOMPLETION_CONFIG environment variable.
    """
    bundled = bundled_file("default_config.json")
    settings = _overlay(Settings(), _read_json(bundled.read_text(encoding="utf-8"), "defaults"))

    if path is None:
        path = os.getenv(CONFIG_ENV_VAR)
    if path is None:
        return settings

    if not os.path.exists(path):
        raise InputError(f"No config file found at {path}")
    with open(path, "r", encoding="utf-8") as f:
        settings = _overlay(settings, _read_json(f.read(), path))
    logger.info("Configuration loaded from %s", path)
    return settings
