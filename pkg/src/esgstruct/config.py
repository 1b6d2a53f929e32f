"""Pipeline configuration, loadable from a TOML file.

Example::

    keep_headers = false
    on_caption_error = "stub"

    [chunking]
    max_characters = 4096
    combine_text_under_n_chars = 0

    [vision]
    mode = "stub"
"""

from __future__ import annotations

import dataclasses
import sys
from dataclasses import dataclass, field
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .captioning import VisionClientConfig
from .cleaning import CleaningPolicy
from .elements import ChunkingConfig
from .ingest import ClassifierThresholds


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class PipelineConfig:
    cleaning: CleaningPolicy = field(default_factory=CleaningPolicy)
    chunking: ChunkingConfig = field(default_factory=ChunkingConfig)
    classifier: ClassifierThresholds = field(default_factory=ClassifierThresholds)
    vision: VisionClientConfig = field(default_factory=VisionClientConfig)
    keep_headers: bool = False
    on_caption_error: str = "stub"

    def __post_init__(self):
        if self.on_caption_error not in ("fail", "stub"):
            raise ConfigError(f"on_caption_error must be 'fail' or 'stub', got {self.on_caption_error!r}")


_SECTIONS = {
    "cleaning": CleaningPolicy,
    "chunking": ChunkingConfig,
    "classifier": ClassifierThresholds,
    "vision": VisionClientConfig,
}


def _build(cls, values: dict, where: str):
    known = {f.name for f in dataclasses.fields(cls)}
    unknown = sorted(set(values) - known)
    if unknown:
        raise ConfigError(f"unknown key(s) in [{where}]: {', '.join(unknown)}")
    try:
        return cls(**values)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"[{where}]: {exc}") from exc


def config_from_dict(data: dict) -> PipelineConfig:
    top_level = {"keep_headers", "on_caption_error"}
    unknown = sorted(set(data) - top_level - set(_SECTIONS))
    if unknown:
        raise ConfigError(f"unknown config key(s): {', '.join(unknown)}")
    kwargs = {}
    for name, cls in _SECTIONS.items():
        section = data.get(name, {})
        if not isinstance(section, dict):
            raise ConfigError(f"[{name}] must be a table")
        kwargs[name] = _build(cls, section, name)
    for name in top_level & set(data):
        kwargs[name] = data[name]
    try:
        return PipelineConfig(**kwargs)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def load_config(path: str | Path | None) -> PipelineConfig:
    if path is None:
        return PipelineConfig()
    with open(path, "rb") as fh:
        try:
            data = tomllib.load(fh)
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"{path}: {exc}") from exc
    return config_from_dict(data)
