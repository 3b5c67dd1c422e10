import logging
from pathlib import Path
from time import perf_counter
from typing import Any, Dict, List, Optional, Sequence

import matplotlib
from pandas import DataFrame, read_csv, concat
from pandas.errors import EmptyDataError

from ergodic_rl.chains.chain_analysis import analyze_policy, induced_chain
from ergodic_rl.chains.dot_export import condensation_dot
from ergodic_rl.chains.ergodic_mdp import is_ergodic_mdp
from ergodic_rl.cli.config import ExperimentConfig, load_config
from ergodic_rl.cli.experiments import ALGORITHMS, PlotRequest, RunResult
from ergodic_rl.cli.manifest import RunEntry, RunManifest, relative_paths
from ergodic_rl.cli.registry import ENVIRONMENTS, build_environment
from ergodic_rl.compound_types import PathLike
from ergodic_rl.exceptions import ConfigError, SchemaError, ShapeError, \
    SpecParseError, UnsupportedPolicy
from ergodic_rl.literals import PLOT_KIND
from ergodic_rl.plots.experiment_plots import plot_returns, \
    plot_ergodicity_gap, plot_preference, plot_transformation, \
    plot_learning_curve
from ergodic_rl.process.policy_spec import PolicySpec
from ergodic_rl.process.spec_io import load_mdp_spec, load_policy_spec
from ergodic_rl.process.trajectory import TRAJECTORY_COLUMNS
from ergodic_rl.settings import PLOT_FILE_TYPE

logger = logging.getLogger(__name__)

PLOT_SCHEMAS: Dict[str, List[List[str]]] = {
    'returns': [TRAJECTORY_COLUMNS],
    'gap': [['t', 'ensemble_mean', 'ci'], ['trajectory', 'time_mean', 'ci']],
    'preference': [['p', 'safe_preference', 'ci']],
    'transformation': [['R', 'h'], ['R', 'log_sq_reward']],
    'learning': [['iteration', 'objective']],
}
SWEEP_FILE_NAME = 'sweep.csv'
METRICS_FILE_NAME = 'metrics.csv'


def cmd_analyze_chain(mdp_path: PathLike,
                      policy_path: Optional[PathLike] = None,
                      dot_path: Optional[PathLike] = None) -> str:
    """
    Return the chain report for the chain a policy induces on an MDP, the
    uniform random policy if none is given, and optionally write the DOT
    graph of its strongly connected components.

    :raises SpecParseError: with the line number of a malformed spec, or if
        the policy does not fit the MDP.
    """
    mdp = load_mdp_spec(mdp_path)
    if policy_path is None:
        policy = PolicySpec.uniform(mdp.n_states, mdp.n_actions)
        header = 'policy: uniform random'
    else:
        policy = load_policy_spec(policy_path)
        header = f'policy: {policy_path}'
    try:
        report = analyze_policy(mdp, policy)
    except (ShapeError, UnsupportedPolicy) as error:
        raise SpecParseError(f'{policy_path}: {error}')
    if dot_path is not None:
        Path(dot_path).write_text(
            condensation_dot(report, induced_chain(mdp, policy))
        )
    lines = [header, report.to_text(),
             f'mdp: {is_ergodic_mdp(mdp).name}']
    return '\n'.join(lines)


# region plots

def _read_plot_csv(file_path: PathLike, columns: List[str]) -> DataFrame:

    try:
        data = read_csv(file_path)
    except EmptyDataError:
        raise SchemaError(f'{file_path} is empty', column=columns[0])
    for column in columns:
        if column not in data.columns:
            raise SchemaError(f'{file_path} is missing column {column!r}',
                              column=column)
    if data.empty:
        raise SchemaError(f'{file_path} has no rows', column=columns[0])
    return data


def _call_plot(plot_function, *args, **options):

    try:
        return plot_function(*args, **options)
    except TypeError as error:
        raise ConfigError(f'invalid plot options {options}: {error}')


def cmd_plot(kind: PLOT_KIND, inputs: Sequence[PathLike],
             output: PathLike, **options: Any) -> Path:
    """
    Render a plot from CSV outputs and save it.

    Returns plots read one or more trajectory CSVs; gap plots read the
    ensemble and time CSVs in that order; transformation plots read the
    curve CSV and optionally the scatter CSV it was fitted to; the others
    read one CSV.

    :raises SchemaError: naming the first missing column, or for an empty
                         CSV.
    """
    if kind not in PLOT_SCHEMAS:
        raise ConfigError(f'plot kind must be in {sorted(PLOT_SCHEMAS)}')
    if not inputs:
        raise ConfigError('plot needs at least one input CSV')
    matplotlib.use('Agg')
    schemas = PLOT_SCHEMAS[kind]
    if kind == 'returns':
        data = concat([_read_plot_csv(path, schemas[0]) for path in inputs],
                      ignore_index=True)
        formatter = _call_plot(plot_returns, data, **options)
    elif kind == 'gap':
        if len(inputs) != 2:
            raise ConfigError('gap plots need the ensemble and time CSVs')
        formatter = plot_ergodicity_gap(
            _read_plot_csv(inputs[0], schemas[0]),
            _read_plot_csv(inputs[1], schemas[1])
        )
    elif kind == 'transformation':
        if len(inputs) > 2:
            raise ConfigError('transformation plots take the curve CSV and '
                              'at most one scatter CSV')
        scatter = _read_plot_csv(inputs[1], schemas[1]) \
            if len(inputs) == 2 else None
        formatter = _call_plot(plot_transformation,
                               _read_plot_csv(inputs[0], schemas[0]),
                               scatter, **options)
    else:
        data = _read_plot_csv(inputs[0], schemas[0])
        plot_function = {
            'preference': plot_preference,
            'learning': plot_learning_curve,
        }[kind]
        formatter = _call_plot(plot_function, data, **options)
    output = Path(output)
    if not output.suffix:
        output = output.with_suffix(f'.{PLOT_FILE_TYPE}')
    formatter.save(output)
    formatter.close()
    return output


def _emit_plots(result: RunResult, run_dir: Path):

    for i, request in enumerate(result.plots):
        output = run_dir / f'{request.kind}_{i}.{PLOT_FILE_TYPE}'
        result.files.append(cmd_plot(request.kind, request.inputs, output,
                                     **request.options))

# endregion


def _resolve(config: ExperimentConfig):
    """
    Fail on unknown component names before any output is written.
    """
    ENVIRONMENTS.get(config.environment.name)
    return ALGORITHMS.get(config.algorithm.name)


def _run_one(config: ExperimentConfig, seed: int, run_dir: Path,
             output_dir: Path,
             grid_point: Optional[Dict[str, Any]] = None) -> RunEntry:

    runner = _resolve(config)
    run_dir.mkdir(parents=True, exist_ok=True)
    start = perf_counter()
    env = build_environment(config.environment.name,
                            config.environment.settings)
    try:
        result = runner(env, dict(config.algorithm.settings), seed, run_dir)
    except (ConfigError, SchemaError):
        raise
    except (TypeError, ValueError) as error:
        raise ConfigError(f'{config.experiment} seed {seed}: {error}')
    if config.emit_plots:
        _emit_plots(result, run_dir)
    elapsed = perf_counter() - start
    logger.info(f'{config.experiment} seed {seed} finished in '
                f'{elapsed:.2f}s')
    return RunEntry(seed=seed,
                    files=relative_paths(result.files, output_dir),
                    wall_clock_seconds=elapsed, metrics=result.metrics,
                    grid_point=grid_point or {})


def _metrics_frame(runs: List[RunEntry], grid_keys: List[str]) -> DataFrame:

    rows = []
    for run in runs:
        for metric, value in run.metrics.items():
            rows.append([run.grid_point.get(key) for key in grid_keys] +
                        [run.seed, metric, value])
    return DataFrame(rows, columns=grid_keys + ['seed', 'metric', 'value'])


def cmd_run(config_path: PathLike) -> Path:
    """
    Run an experiment once per seed and return its output directory. Each
    seed writes to seed_<seed>/; metrics.csv collects every seed's metrics
    and manifest.yaml is written last.

    :raises ConfigError: for invalid configs.
    :raises UnknownComponent: for unregistered environments or algorithms.
    """
    config = load_config(config_path)
    if config.grid:
        raise ConfigError('config has a grid; use the sweep command')
    _resolve(config)
    output_dir = config.output_path()
    output_dir.mkdir(parents=True, exist_ok=True)
    logger.info(f'running {config.experiment} (config {config.config_hash}) '
                f'into {output_dir}')
    manifest = RunManifest(experiment=config.experiment,
                           config_hash=config.config_hash)
    for seed in config.seeds:
        manifest.runs.append(_run_one(
            config, seed, output_dir / f'seed_{seed}', output_dir
        ))
    _metrics_frame(manifest.runs, []).to_csv(
        output_dir / METRICS_FILE_NAME, index=False
    )
    manifest.files.append(METRICS_FILE_NAME)
    manifest.write(output_dir)
    logger.info(f'finished {config.experiment}')
    return output_dir


def cmd_sweep(config_path: PathLike) -> Path:
    """
    Run an experiment at every grid point for every seed and write the
    metrics in long format to sweep.csv: one column per grid path, then
    seed, metric and value.

    :raises ConfigError: for invalid configs or an empty grid.
    """
    config = load_config(config_path)
    if not config.grid:
        raise ConfigError('sweep needs a non-empty grid')
    _resolve(config)
    output_dir = config.output_path()
    output_dir.mkdir(parents=True, exist_ok=True)
    grid_keys = sorted(config.grid)
    points = config.grid_points()
    logger.info(f'sweeping {config.experiment} over {len(points)} points '
                f'(config {config.config_hash}) into {output_dir}')
    manifest = RunManifest(experiment=config.experiment,
                           config_hash=config.config_hash)
    for i, point in enumerate(points):
        point_config = config.with_overrides(point)
        for seed in config.seeds:
            run_dir = output_dir / f'point_{i:03d}' / f'seed_{seed}'
            manifest.runs.append(_run_one(
                point_config, seed, run_dir, output_dir, grid_point=point
            ))
    _metrics_frame(manifest.runs, grid_keys).to_csv(
        output_dir / SWEEP_FILE_NAME, index=False
    )
    manifest.files.append(SWEEP_FILE_NAME)
    manifest.write(output_dir)
    logger.info(f'finished sweep {config.experiment}')
    return output_dir


def cmd_list() -> str:

    return '\n'.join([
        'environments:',
        *(f'  {name}' for name in ENVIRONMENTS.names),
        'algorithms:',
        *(f'  {name}' for name in ALGORITHMS.names),
    ])
