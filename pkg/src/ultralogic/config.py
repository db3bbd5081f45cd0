"""Run configuration: one JSON file, flag overrides, nothing else.

The only environment hook is ULTRALOGIC_CONFIG, which points at an
alternative config file path.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field, replace
from typing import Dict, Optional

from .words import DEFAULT_TAIL_TEMPLATE


class ConfigError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    truncation_order: int = 8
    precision: int = 50
    f: int = 2
    alphabet_path: Optional[str] = None
    tail_template: str = DEFAULT_TAIL_TEMPLATE
    coordinate_map: Dict[str, int] = field(
        default_factory=lambda: {"mass": 3, "charge": 5, "spin": 7}
    )
    seed: int = 0

    def __post_init__(self):
        if self.truncation_order < 2:
            raise ConfigError("truncation order must be >= 2")
        if self.precision < 20:
            raise ConfigError("precision must be >= 20")
        if self.f < 1:
            raise ConfigError("f must be >= 1")


_FIELDS = {
    "truncation_order",
    "precision",
    "f",
    "alphabet_path",
    "tail_template",
    "coordinate_map",
    "seed",
}


def load_config(path: Optional[str] = None, overrides: Optional[dict] = None) -> RunConfig:
    """Config file (explicit path, else ULTRALOGIC_CONFIG) plus overrides."""
    path = path or os.environ.get("ULTRALOGIC_CONFIG")
    data = {}
    if path:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        unknown = set(data) - _FIELDS
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    cfg = RunConfig(**data)
    if overrides:
        cfg = replace(cfg, **{k: v for k, v in overrides.items() if v is not None})
    return cfg
