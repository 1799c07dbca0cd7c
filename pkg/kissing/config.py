"""Settings for every bound computation, overlaid from YAML.

Resolution order for the settings file: explicit path, then the
``KISSING_CONFIG`` environment variable, then ``./kissing_config.yaml``.
Anything not set in the file keeps the packaged default from
``kissing/defaults.yaml``.
"""

import dataclasses
import logging
import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any

import yaml

from kissing.errors import ConfigError


logger = logging.getLogger(__name__)

CONFIG_ENV_VAR = "KISSING_CONFIG"
LOCAL_CONFIG = "kissing_config.yaml"


@dataclass(frozen=True)
class Tolerances:
    tie: float = 1e-10
    condition: float = 1e-12
    kernel_check: float = 1e-8


@dataclass(frozen=True)
class LpSettings:
    grid_size: int = 4000
    max_iterations: int = 50000
    pivot_tolerance: float = 1e-9
    check_points: int = 20001


@dataclass(frozen=True)
class GeometricSettings:
    tol: float = 1e-6
    max_depth: int = 30
    grid_nodes: int = 257


@dataclass(frozen=True)
class MusinPreset:
    n: int
    s: float
    t0: float
    mu: int
    degree: int = 9


@dataclass(frozen=True)
class MusinSettings:
    restarts: int = 8
    iterations: int = 200
    seed: int = 0
    grid_size: int = 600
    max_rounds: int = 40
    derivative_samples: int = 1000
    presets: tuple[MusinPreset, ...] = (
        MusinPreset(n=3, s=0.5, t0=-0.5907, mu=4, degree=9),
        MusinPreset(n=4, s=0.5, t0=-0.608, mu=6, degree=9),
    )

    def preset_for(self, n: int, s: float) -> MusinPreset | None:
        for preset in self.presets:
            if preset.n == n and abs(preset.s - float(s)) < 1e-12:
                return preset
        return None


@dataclass(frozen=True)
class ConstructionSettings:
    max_enumeration_length: int = 12


@dataclass(frozen=True)
class AnalysisSettings:
    merge_tolerance: float = 1e-9
    rank_tolerance: float = 1e-8
    unit_tolerance: float = 1e-12
    renormalize_tolerance: float = 1e-6


@dataclass(frozen=True)
class Settings:
    tolerances: Tolerances = field(default_factory=Tolerances)
    lp: LpSettings = field(default_factory=LpSettings)
    geometric: GeometricSettings = field(default_factory=GeometricSettings)
    musin: MusinSettings = field(default_factory=MusinSettings)
    constructions: ConstructionSettings = field(default_factory=ConstructionSettings)
    analysis: AnalysisSettings = field(default_factory=AnalysisSettings)


DEFAULTS = Settings()


def _overlay(section: Any, values: dict[str, Any], where: str) -> Any:
    """Return a copy of ``section`` with ``values`` applied, rejecting unknown keys."""
    known = {f.name for f in dataclasses.fields(section)}
    unknown = set(values) - known
    if unknown:
        raise ConfigError(f"unknown keys in [{where}]: {', '.join(sorted(unknown))}")
    updates: dict[str, Any] = {}
    for key, value in values.items():
        current = getattr(section, key)
        if key == "presets":
            try:
                updates[key] = tuple(MusinPreset(**item) for item in value)
            except TypeError as exc:
                raise ConfigError(f"bad musin preset: {exc}") from exc
        elif dataclasses.is_dataclass(current):
            if not isinstance(value, dict):
                raise ConfigError(f"[{where}.{key}] must be a mapping")
            updates[key] = _overlay(current, value, f"{where}.{key}")
        else:
            updates[key] = type(current)(value)
    return dataclasses.replace(section, **updates)


def _read_yaml(path: Path | str) -> dict[str, Any]:
    try:
        with open(path) as f:
            data = yaml.safe_load(f) or {}
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"invalid YAML in {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be a mapping")
    return data


def packaged_defaults() -> Settings:
    text = resources.files("kissing").joinpath("defaults.yaml").read_text()
    data = yaml.safe_load(text) or {}
    return _overlay(DEFAULTS, data, "defaults")


def resolve_config_path(explicit: str | None = None) -> Path | None:
    if explicit:
        return Path(explicit)
    env_path = os.environ.get(CONFIG_ENV_VAR)
    if env_path:
        return Path(env_path)
    local = Path.cwd() / LOCAL_CONFIG
    if local.exists():
        return local
    return None


def load_settings(path: str | None = None) -> Settings:
    """Load settings: packaged defaults overlaid with the resolved YAML file."""
    settings = packaged_defaults()
    config_path = resolve_config_path(path)
    if config_path is None:
        return settings
    logger.info("Loading settings from %s", config_path)
    return _overlay(settings, _read_yaml(config_path), str(config_path))
