#!/usr/bin/env python3
"""
Run configuration: one parameter source, --set overrides and command options
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from ..shared.errors import UsageError
from ..shared.model import CHEMOSTAT_FIELDS, SCALED_FIELDS, ChemostatParams, ScaledParams, nondimensionalize
from ..shared.presets import preset_values
from ..shared.storage import FORMATS, load_params
from .settings import MAX_TOL, MIN_TOL

logger = logging.getLogger(__name__)

COMMANDS = ('validate', 'scale', 'equilibria', 'classify', 'simulate', 'attractor', 'lyapunov', 'sweep', 'curves')
# Option keys a config file may carry next to its parameters
OPTION_KEYS = ('y0', 't_end', 'budget', 'sim_budget', 'grid', 'x_grid', 'a2_grid', 'workers', 'interval',
               'transient', 'transient_fraction', 'system')
DIMENSIONAL_KEYS = set(CHEMOSTAT_FIELDS) | {'M1', 'M2', 'M3', 'M4'}
# Top-level config keys holding parameters, with the names each accepts
PARAM_SECTIONS = {'params': None, 'chemostat': DIMENSIONAL_KEYS, 'scaled': set(SCALED_FIELDS)}


def parse_assignment(text: str) -> Tuple[str, float]:
    """'key=value' with a real value"""
    key, sep, value = text.partition('=')
    key = key.strip()
    if not sep or not key:
        raise UsageError(f"--set expects key=value, got '{text}'")
    if key not in DIMENSIONAL_KEYS and key not in SCALED_FIELDS:
        raise UsageError(f"--set: unknown parameter '{key}'")
    try:
        return key, float(value)
    except ValueError as e:
        raise UsageError(f"--set {key}: '{value}' is not a number") from e


def parse_triple(text: str, name: str, integer_last: bool = False) -> Tuple[float, ...]:
    """'a,b,c' as three numbers"""
    parts = [part.strip() for part in text.split(',')]
    if len(parts) != 3:
        raise UsageError(f"{name} expects three comma-separated numbers, got '{text}'")
    try:
        values = [float(part) for part in parts]
    except ValueError as e:
        raise UsageError(f"{name}: '{text}' is not three numbers") from e
    if integer_last:
        if not values[2].is_integer():
            raise UsageError(f"{name}: point count must be an integer, got {parts[2]}")
        values[2] = int(values[2])
    return tuple(values)


@dataclass
class RunConfig:
    """Everything one command needs, validated before execution"""

    command: str
    params: Union[ChemostatParams, ScaledParams]
    out: Optional[str] = None
    fmt: str = 'csv'
    rel_tol: Optional[float] = None
    abs_tol: Optional[float] = None
    budget: Optional[float] = None
    options: Dict[str, Any] = field(default_factory=dict)

    @property
    def is_dimensional(self) -> bool:
        return isinstance(self.params, ChemostatParams)

    def scaled(self) -> ScaledParams:
        """Scaled parameters, nondimensionalizing dimensional input"""
        if isinstance(self.params, ScaledParams):
            return self.params
        return nondimensionalize(self.params)

    def option(self, key: str, default: Any = None) -> Any:
        value = self.options.get(key)
        return default if value is None else value

    def validate(self):
        """Validate options (parameter values are checked on construction)"""
        if self.command not in COMMANDS:
            raise UsageError(f"Unknown command '{self.command}'")
        if self.fmt not in FORMATS:
            raise UsageError(f"--format must be one of {', '.join(FORMATS)}, got '{self.fmt}'")
        for name, tol in (('--tol-rel', self.rel_tol), ('--tol-abs', self.abs_tol)):
            if tol is not None and not MIN_TOL <= tol <= MAX_TOL:
                raise UsageError(f"{name} must lie in [{MIN_TOL}, {MAX_TOL}], got {tol}")
        if self.budget is not None and self.budget <= 0:
            raise UsageError(f"--budget must be positive, got {self.budget}")
        if self.command == 'scale' and not self.is_dimensional:
            raise UsageError("scale needs dimensional parameters (C, D, A1..A4, B1..B4)")


def _split_source(data: Dict[str, Any], origin: str) -> Tuple[Dict[str, Any], Dict[str, Any]]:
    sections = [key for key in PARAM_SECTIONS if key in data]
    if len(sections) > 1:
        raise UsageError(f"{origin}: give only one of {sorted(sections)}")
    if sections:
        section = sections[0]
        params = data[section]
        options = {key: value for key, value in data.items() if key != section}
        if not isinstance(params, dict):
            raise UsageError(f"{origin}: '{section}' must be an object")
        allowed = PARAM_SECTIONS[section]
        if allowed is not None and not set(params) <= allowed:
            raise UsageError(f"{origin}: '{section}' holds unknown names {sorted(set(params) - allowed)}")
    else:
        params = {key: value for key, value in data.items() if key not in OPTION_KEYS}
        options = {key: value for key, value in data.items() if key in OPTION_KEYS}
    unknown = set(options) - set(OPTION_KEYS)
    if unknown:
        raise UsageError(f"{origin}: unknown options {sorted(unknown)}")
    return dict(params), options


def build_params(values: Dict[str, Any]) -> Union[ChemostatParams, ScaledParams]:
    """ChemostatParams for upper-case keys, ScaledParams for lower-case keys"""
    keys = set(values)
    if not keys:
        raise UsageError("no parameters given (use --config, --preset or --set)")
    if keys <= DIMENSIONAL_KEYS:
        return ChemostatParams.from_dict(values)
    if keys <= set(SCALED_FIELDS):
        return ScaledParams.from_dict(values)
    raise UsageError(f"parameters mix dimensional and scaled names: {sorted(keys)}")


def resolve_run_config(command: str, config_path: Optional[str] = None, preset: Optional[str] = None,
                       assignments: Sequence[str] = (), out: Optional[str] = None, fmt: str = 'csv',
                       rel_tol: Optional[float] = None, abs_tol: Optional[float] = None,
                       budget: Optional[float] = None, options: Optional[Dict[str, Any]] = None) -> RunConfig:
    """Merge the parameter source, --set overrides and flag options into a RunConfig"""
    if config_path and preset:
        raise UsageError("give either --config or --preset, not both")

    values: Dict[str, Any] = {}
    file_options: Dict[str, Any] = {}
    if config_path:
        values, file_options = _split_source(load_params(config_path), config_path)
    elif preset:
        try:
            values = preset_values(preset)
        except ValueError as e:
            raise UsageError(str(e)) from e

    for text in assignments:
        key, value = parse_assignment(text)
        values[key] = value
    if assignments:
        logger.debug(f"🔍 Applied {len(assignments)} --set override(s)")

    merged = dict(file_options)
    merged.update({key: value for key, value in (options or {}).items() if value is not None})
    if budget is None and file_options.get('budget') is not None:
        budget = float(file_options['budget'])

    config = RunConfig(
        command=command,
        params=build_params(values),
        out=out,
        fmt=fmt,
        rel_tol=rel_tol,
        abs_tol=abs_tol,
        budget=budget,
        options=merged,
    )
    config.validate()
    return config


def grid_from_options(options: Dict[str, Any], key: str) -> List[float]:
    """[lo, hi, n] from a config-file list or a parsed flag"""
    value = options.get(key)
    if value is None:
        raise UsageError(f"missing {key}")
    if isinstance(value, str):
        return list(parse_triple(value, key, integer_last=True))
    if not isinstance(value, (list, tuple)) or len(value) != 3:
        raise UsageError(f"{key} must be [lo, hi, n], got {value}")
    return [float(value[0]), float(value[1]), int(value[2])]
