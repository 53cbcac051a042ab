"""Parse, validate and echo run configuration files."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
import hashlib
import json
import math
from pathlib import Path
import re
import tomllib

from py_poro_ader.config.defaults import (
    DEFAULT_AMPLITUDES,
    DEFAULT_CFL,
    DEFAULT_ORDER,
    DEFAULT_PRECISION,
    DEFAULT_SEED,
    DEFAULT_STUDY_ORDERS,
    DEFAULT_STUDY_SUBDIVISIONS,
    DEFAULT_SUBDIVISIONS,
    DEFAULT_T_END,
    DEFAULT_WAVE_VECTOR,
    DEFAULT_WORKERS,
    MATERIAL_KEYS,
    MAX_DEGREE,
    MIN_DEGREE,
    NORM_NAMES,
    QUANTITIES,
)
from py_poro_ader.core.material import MaterialParameters, validate_parameters
from py_poro_ader.exceptions import ConfigError, MaterialError

_SECTION_PATTERN = re.compile(r"^\s*\[\s*([A-Za-z0-9_.-]+)\s*\]")
_KEY_PATTERN = re.compile(r"^\s*([A-Za-z0-9_-]+)\s*=")


@dataclass(frozen=True)
class RunSettings:
    order: int = DEFAULT_ORDER
    subdivisions: int = DEFAULT_SUBDIVISIONS
    t_end: float = DEFAULT_T_END
    cfl_factor: float = DEFAULT_CFL
    log_conservation: bool = False
    residual_check_every: int = 0
    seed: int = DEFAULT_SEED


@dataclass(frozen=True)
class PlaneWaveSettings:
    wave_vector: tuple[float, ...] = DEFAULT_WAVE_VECTOR
    amplitudes: tuple[float, ...] = DEFAULT_AMPLITUDES


@dataclass(frozen=True)
class StudySettings:
    orders: tuple[int, ...] = DEFAULT_STUDY_ORDERS
    subdivisions: tuple[int, ...] = DEFAULT_STUDY_SUBDIVISIONS
    norms: tuple[str, ...] = NORM_NAMES
    workers: int = DEFAULT_WORKERS


@dataclass(frozen=True)
class OutputSettings:
    directory: str | None = None
    precision: int = DEFAULT_PRECISION


@dataclass(frozen=True)
class Config:
    material: MaterialParameters
    run: RunSettings = field(default_factory=RunSettings)
    planewave: PlaneWaveSettings = field(default_factory=PlaneWaveSettings)
    study: StudySettings = field(default_factory=StudySettings)
    output: OutputSettings = field(default_factory=OutputSettings)


_SECTIONS: dict[str, type] = {
    "run": RunSettings,
    "planewave": PlaneWaveSettings,
    "study": StudySettings,
    "output": OutputSettings,
}


class _Locator:
    """Line numbers of section keys, found by a plain text scan."""

    def __init__(self, text: str):
        self._lines: dict[tuple[str, str], int] = {}
        section = ""
        for number, line in enumerate(text.splitlines(), start=1):
            header = _SECTION_PATTERN.match(line)
            if header:
                section = header.group(1)
                self._lines.setdefault((section, ""), number)
                continue
            key = _KEY_PATTERN.match(line)
            if key:
                self._lines.setdefault((section, key.group(1)), number)

    def line(self, section: str, key: str = "") -> int | None:
        return self._lines.get((section, key))

    def error(self, section: str, key: str, message: str) -> ConfigError:
        return ConfigError(message, key=key or section, line=self.line(section, key))


def parse_config(path: Path | str) -> Config:
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    return parse_config_text(path.read_text(encoding="utf-8"))


def parse_config_text(text: str) -> Config:
    try:
        payload = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(str(exc), line=getattr(exc, "lineno", None)) from exc

    locator = _Locator(text)
    for section, value in payload.items():
        if section != "material" and section not in _SECTIONS:
            raise locator.error(section, "", f"unknown section [{section}]")
        if not isinstance(value, dict):
            raise locator.error("", section, f"[{section}] must be a section")

    material = _parse_material(payload.get("material"), locator)
    run = _parse_section("run", RunSettings, payload.get("run", {}), locator)
    planewave = _parse_section(
        "planewave", PlaneWaveSettings, payload.get("planewave", {}), locator
    )
    study = _parse_section("study", StudySettings, payload.get("study", {}), locator)
    output = _parse_section("output", OutputSettings, payload.get("output", {}), locator)

    config = Config(material=material, run=run, planewave=planewave, study=study, output=output)
    _validate(config, locator)
    return config


def _parse_material(values, locator: _Locator) -> MaterialParameters:
    if values is None:
        raise locator.error("material", "", "missing [material] section")
    for key in values:
        if key not in MATERIAL_KEYS:
            raise locator.error("material", key, f"unknown key '{key}'")
    for key in MATERIAL_KEYS:
        if key not in values:
            raise locator.error("material", "", f"missing key '{key}'")
        if isinstance(values[key], bool) or not isinstance(values[key], (int, float)):
            raise locator.error("material", key, "must be a number")

    params = MaterialParameters.from_mapping(values)
    try:
        validate_parameters(params)
    except MaterialError as exc:
        key = exc.key if exc.key in MATERIAL_KEYS else ""
        raise ConfigError(exc.detail, key=exc.key, line=locator.line("material", key)) from exc
    return params


def _coerce(section: str, key: str, value, default, locator: _Locator):
    if isinstance(default, bool):
        if not isinstance(value, bool):
            raise locator.error(section, key, "must be true or false")
        return value
    if isinstance(default, int) and not isinstance(default, bool):
        if isinstance(value, bool) or not isinstance(value, int):
            raise locator.error(section, key, "must be an integer")
        return value
    if isinstance(default, float):
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise locator.error(section, key, "must be a number")
        return float(value)
    if isinstance(default, tuple):
        if not isinstance(value, list):
            raise locator.error(section, key, "must be a list")
        if default and isinstance(default[0], float):
            if any(isinstance(item, bool) or not isinstance(item, (int, float)) for item in value):
                raise locator.error(section, key, "must be a list of numbers")
            return tuple(float(item) for item in value)
        if default and isinstance(default[0], int):
            if any(isinstance(item, bool) or not isinstance(item, int) for item in value):
                raise locator.error(section, key, "must be a list of integers")
            return tuple(value)
        return tuple(str(item) for item in value)
    if not isinstance(value, str):
        raise locator.error(section, key, "must be a string")
    return value


def _parse_section(section: str, settings_type: type, values: dict, locator: _Locator):
    defaults = settings_type()
    known = settings_type.__dataclass_fields__
    parsed = {}
    for key, value in values.items():
        if key not in known:
            raise locator.error(section, key, f"unknown key '{key}'")
        parsed[key] = _coerce(section, key, value, getattr(defaults, key), locator)
    return settings_type(**parsed)


def _check_order(order: int, section: str, key: str, locator: _Locator) -> None:
    if not MIN_DEGREE <= order <= MAX_DEGREE:
        raise locator.error(section, key, f"order must lie in [{MIN_DEGREE}, {MAX_DEGREE}]")


def _check_subdivisions(n: int, section: str, key: str, locator: _Locator) -> None:
    if n < 2 or n % 2:
        raise locator.error(section, key, "subdivisions must be an even integer >= 2")


def _validate(config: Config, locator: _Locator) -> None:
    run = config.run
    _check_order(run.order, "run", "order", locator)
    _check_subdivisions(run.subdivisions, "run", "subdivisions", locator)
    if not run.t_end >= 0 or not math.isfinite(run.t_end):
        raise locator.error("run", "t_end", "t_end must be non-negative")
    if not 0 < run.cfl_factor <= 1:
        raise locator.error("run", "cfl_factor", "cfl_factor must lie in (0, 1]")
    if run.residual_check_every < 0:
        raise locator.error("run", "residual_check_every", "must be non-negative")

    wave = config.planewave
    if len(wave.wave_vector) != 3 or not any(wave.wave_vector):
        raise locator.error("planewave", "wave_vector", "must be a nonzero list of 3 numbers")
    if len(wave.amplitudes) != QUANTITIES:
        raise locator.error("planewave", "amplitudes", f"must list {QUANTITIES} amplitudes")

    study = config.study
    if not study.orders:
        raise locator.error("study", "orders", "must not be empty")
    for order in study.orders:
        _check_order(order, "study", "orders", locator)
    if len(study.subdivisions) < 2:
        raise locator.error("study", "subdivisions", "needs at least two meshes")
    for n in study.subdivisions:
        _check_subdivisions(n, "study", "subdivisions", locator)
    for norm in study.norms:
        if norm not in NORM_NAMES:
            raise locator.error("study", "norms", f"unknown norm '{norm}'")
    if study.workers < 1:
        raise locator.error("study", "workers", "workers must be >= 1")

    if not 1 <= config.output.precision <= 17:
        raise locator.error("output", "precision", "precision must lie in [1, 17]")


def _format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, tuple):
        return "[" + ", ".join(_format_value(item) for item in value) + "]"
    return json.dumps(value)


def dump_config(config: Config) -> str:
    """Normalised TOML text that parses back to an equal config."""
    lines = ["[material]"]
    lines += [f"{key} = {_format_value(value)}" for key, value in config.material.as_dict().items()]
    for section in _SECTIONS:
        settings = getattr(config, section)
        lines += ["", f"[{section}]"]
        for key in settings.__dataclass_fields__:
            value = getattr(settings, key)
            if value is None:
                continue
            lines.append(f"{key} = {_format_value(value)}")
    return "\n".join(lines) + "\n"


def config_hash(config: Config | None) -> str:
    if config is None:
        return "none"
    return hashlib.sha256(dump_config(config).encode("utf-8")).hexdigest()[:16]


def with_run_overrides(config: Config, **overrides) -> Config:
    """Copy of ``config`` with the given [run] keys replaced and re-validated."""
    values = {key: value for key, value in overrides.items() if value is not None}
    if not values:
        return config
    unknown = set(values) - set(RunSettings.__dataclass_fields__)
    if unknown:
        raise ConfigError(f"unknown key '{sorted(unknown)[0]}'", key="run")
    updated = replace(config, run=replace(config.run, **values))
    _validate(updated, _Locator(""))
    return updated
