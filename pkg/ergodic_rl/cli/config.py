"""
Experiment configuration files.

An experiment config is a single YAML mapping::

    experiment: fig1_coin_toss_alpha1     # name, used in logs and manifest
    environment:
      name: coin_toss                     # a registered environment
      params: {win_mult: 0.5}             # keyword arguments, optional
    algorithm:
      name: rollout                       # a registered algorithm
      config: {horizon: 1000}             # algorithm settings, optional
    seeds: [0, 1, 2]                      # non-empty list of seeds
    output_dir: out/full_stake            # relative to the output root
    emit_plots: true                      # optional, default false
    grid:                                 # sweep only: dotted path -> values
      environment.params.p_loss: [0.4, 0.5, 0.6]

Relative output directories are resolved against the directory named by the
ERGODIC_RL_OUTPUT_ROOT environment variable, or the working directory when it
is unset. Nothing else is read from the environment. Relative file settings,
environment.params.path and algorithm.config.policy_file, are resolved
against the directory of the config file.
"""
import json
import logging
import os
from dataclasses import dataclass, field
from hashlib import sha256
from itertools import product
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from ergodic_rl.compound_types import ConfigDict, PathLike
from ergodic_rl.exceptions import ConfigError, SpecParseError
from ergodic_rl.process.spec_io import load_yaml_with_lines
from ergodic_rl.settings import OUTPUT_ROOT_ENV
from ergodic_rl.utils.arg_transforms import set_dotted

logger = logging.getLogger(__name__)

REQUIRED_KEYS = ('experiment', 'environment', 'algorithm', 'seeds',
                 'output_dir')
OPTIONAL_KEYS = ('emit_plots', 'grid')
GRID_ROOTS = ('environment', 'algorithm')
FILE_SETTINGS = {'environment': 'path', 'algorithm': 'policy_file'}


@dataclass(frozen=True)
class ComponentRef(object):
    """
    A registered component by name with its keyword settings.
    """
    name: str
    settings: ConfigDict = field(default_factory=dict)


@dataclass(frozen=True)
class ExperimentConfig(object):

    experiment: str
    environment: ComponentRef
    algorithm: ComponentRef
    seeds: Tuple[int, ...]
    output_dir: str
    emit_plots: bool = False
    grid: Dict[str, List[Any]] = field(default_factory=dict)
    raw: ConfigDict = field(default_factory=dict, compare=False)
    base_dir: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):

        if not self.seeds:
            raise ConfigError('seeds must be a non-empty list')
        for seed in self.seeds:
            if not isinstance(seed, int) or isinstance(seed, bool) \
                    or seed < 0:
                raise ConfigError(
                    f'seeds must be non-negative integers, got {seed!r}'
                )
        if len(set(self.seeds)) != len(self.seeds):
            raise ConfigError(f'seeds must be distinct, got {self.seeds}')

    @property
    def config_hash(self) -> str:

        return config_hash(self.raw)

    def output_path(self) -> Path:
        """
        Return the output directory, resolved against the output root.
        """
        output_dir = Path(self.output_dir)
        if output_dir.is_absolute():
            return output_dir
        return Path(os.environ.get(OUTPUT_ROOT_ENV, '.')) / output_dir

    def grid_points(self) -> List[Dict[str, Any]]:
        """
        Return every combination of grid values, keys in sorted order.
        """
        keys = sorted(self.grid)
        return [dict(zip(keys, values))
                for values in product(*(self.grid[key] for key in keys))]

    def with_overrides(self, overrides: Dict[str, Any]) -> 'ExperimentConfig':
        """
        Return the config with dotted-path values replaced and no grid.
        """
        raw = {key: value for key, value in self.raw.items() if key != 'grid'}
        for path, value in overrides.items():
            raw = set_dotted(raw, path, value)
        return parse_config(raw, base_dir=self.base_dir)


def config_hash(raw: ConfigDict) -> str:
    """
    Return the SHA-256 of the canonical JSON of a parsed config, so the hash
    does not depend on key order.
    """
    canonical = json.dumps(raw, sort_keys=True, separators=(',', ':'),
                           default=str)
    return sha256(canonical.encode('utf-8')).hexdigest()


def _component(raw: ConfigDict, key: str, settings_key: str,
               base_dir: Optional[PathLike] = None) -> ComponentRef:

    value = raw[key]
    if not isinstance(value, dict) or 'name' not in value:
        raise ConfigError(f'{key} must be a mapping with a name')
    settings = value.get(settings_key) or {}
    if not isinstance(settings, dict):
        raise ConfigError(f'{key}.{settings_key} must be a mapping')
    unknown = set(value) - {'name', settings_key}
    if unknown:
        raise ConfigError(f'unknown keys in {key}: {sorted(unknown)}')
    settings = dict(settings)
    file_key = FILE_SETTINGS[key]
    if base_dir is not None and isinstance(settings.get(file_key), str) \
            and not Path(settings[file_key]).is_absolute():
        settings[file_key] = str(Path(base_dir) / settings[file_key])
    return ComponentRef(name=str(value['name']), settings=settings)


def parse_config(raw: Any,
                 base_dir: Optional[PathLike] = None) -> ExperimentConfig:
    """
    Validate a parsed config mapping.

    :param raw: The parsed mapping.
    :param base_dir: Directory that relative file settings are resolved
                     against. They are left as given if None.

    :raises ConfigError: naming the first invalid key.
    """
    if not isinstance(raw, dict):
        raise ConfigError('an experiment config must be a mapping')
    missing = [key for key in REQUIRED_KEYS if key not in raw]
    if missing:
        raise ConfigError(f'config is missing keys {missing}')
    unknown = set(raw) - set(REQUIRED_KEYS) - set(OPTIONAL_KEYS)
    if unknown:
        raise ConfigError(f'unknown config keys {sorted(unknown)}')
    seeds = raw['seeds']
    if not isinstance(seeds, list):
        raise ConfigError('seeds must be a list')
    grid = raw.get('grid') or {}
    if not isinstance(grid, dict):
        raise ConfigError('grid must be a mapping of dotted paths to lists')
    for path, values in grid.items():
        if path.split('.')[0] not in GRID_ROOTS:
            raise ConfigError(
                f'grid path {path!r} must start with one of {GRID_ROOTS}'
            )
        if not isinstance(values, list) or not values:
            raise ConfigError(f'grid values for {path!r} must be a '
                              f'non-empty list')
    emit_plots = raw.get('emit_plots', False)
    if not isinstance(emit_plots, bool):
        raise ConfigError('emit_plots must be true or false')
    return ExperimentConfig(
        experiment=str(raw['experiment']),
        environment=_component(raw, 'environment', 'params', base_dir),
        algorithm=_component(raw, 'algorithm', 'config', base_dir),
        seeds=tuple(seeds),
        output_dir=str(raw['output_dir']),
        emit_plots=emit_plots,
        grid={path: list(values) for path, values in grid.items()},
        raw=raw,
        base_dir=None if base_dir is None else str(base_dir)
    )


def load_config(file_path: PathLike) -> ExperimentConfig:
    """
    Load and validate an experiment config file.

    :raises ConfigError: for unreadable files, YAML syntax errors (with the
                         line number) and invalid keys.
    """
    try:
        text = Path(file_path).read_text()
    except OSError as error:
        raise ConfigError(f'cannot read {file_path}: {error.strerror}')
    try:
        raw, _ = load_yaml_with_lines(text)
    except SpecParseError as error:
        raise ConfigError(f'{file_path}: {error}')
    config = parse_config(raw, base_dir=Path(file_path).parent)
    logger.debug(f'loaded config {config.experiment} from {file_path}')
    return config
