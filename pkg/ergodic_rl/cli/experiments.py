"""
Algorithm runners for experiment configs. A runner takes the built
environment, the algorithm settings, one seed and an output directory, writes
its CSVs there and returns the files, scalar metrics and plot requests.
"""
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple, Type, Union

import yaml
from numpy import array, median
from pandas import DataFrame

from ergodic_rl.chains.chain_analysis import analyze_policy, induced_chain
from ergodic_rl.chains.dot_export import condensation_dot
from ergodic_rl.compound_types import ConfigDict
from ergodic_rl.diagnostics.ergodicity import ergodicity_gap, \
    positive_growth_fraction, non_ergodicity_score
from ergodic_rl.enums.reward_channel import REWARD_CHANNEL
from ergodic_rl.enums.update_rule import UPDATE_RULE
from ergodic_rl.environments.bandit import MultiplicativeBandit, \
    BANDIT_ACTIONS
from ergodic_rl.environments.coin_toss import CoinTossProcess
from ergodic_rl.exceptions import ConfigError, DomainError, SpecParseError
from ergodic_rl.growth.growth_q import GrowthQConfig, multi_step_growth_q
from ergodic_rl.learners.fraction_policy import DiscretizedFractionPolicy, \
    fraction_grid
from ergodic_rl.learners.q_learning import QLearningConfig, \
    tabular_q_learning
from ergodic_rl.learners.reinforce import ReinforceConfig, reinforce_train
from ergodic_rl.learners.value_iteration import evaluate_fraction_policy
from ergodic_rl.literals import PLOT_KIND
from ergodic_rl.process.mdp_spec import MdpSpec
from ergodic_rl.process.policy_spec import PolicySpec
from ergodic_rl.process.rollout import ensemble_rollout
from ergodic_rl.process.spec_io import parse_policy_spec, load_policy_spec
from ergodic_rl.process.trajectory import write_trajectories_csv
from ergodic_rl.process.wealth_process import WealthProcess
from ergodic_rl.cli.registry import Registry
from ergodic_rl.temporal.bandit_agent import BanditAgentConfig, \
    train_preference
from ergodic_rl.temporal.preference import preference_sweep
from ergodic_rl.temporal.wealth_agent import WealthAgentConfig, \
    train_wealth_agent, evaluate_wealth_agent
from ergodic_rl.transforms.loess import LoessConfig
from ergodic_rl.transforms.transform_learning import learn_and_train
from ergodic_rl.utils.number_utils import log_ratio

logger = logging.getLogger(__name__)

GROWTH_COLUMNS = ['trajectory', 'per_step_log_growth']
WEALTH_EVALUATION_COLUMNS = ['mode', 'trajectory', 'final_return',
                             'per_step_log_growth']


@dataclass(frozen=True)
class PlotRequest(object):

    kind: PLOT_KIND
    inputs: List[Path]
    options: Dict[str, Any] = field(default_factory=dict)


@dataclass
class RunResult(object):

    files: List[Path] = field(default_factory=list)
    metrics: Dict[str, float] = field(default_factory=dict)
    plots: List[PlotRequest] = field(default_factory=list)

    def write_csv(self, data: DataFrame, file_path: Path) -> Path:

        data.to_csv(file_path, index=False)
        self.files.append(file_path)
        return file_path


Runner = Callable[[Any, ConfigDict, int, Path], RunResult]
ALGORITHMS: Registry[Runner] = Registry('algorithm')


# region settings helpers

def _pop(settings: ConfigDict, key: str, default: Any = ...) -> Any:

    if key in settings:
        return settings.pop(key)
    if default is ...:
        raise ConfigError(f'algorithm config is missing {key!r}')
    return default


def _build(cls: Type, settings: ConfigDict, name: str):
    """
    Build a typed config from the remaining settings.
    """
    try:
        if cls is GrowthQConfig:
            return GrowthQConfig.from_dict(settings)
        return cls(**settings)
    except (TypeError, ValueError) as error:
        raise ConfigError(f'invalid config for {name}: {error}')


def _reject_unknown(settings: ConfigDict, name: str):

    if settings:
        raise ConfigError(f'unknown keys for {name}: {sorted(settings)}')


def _require(env, kinds: Union[type, Tuple[type, ...]], name: str):

    if not isinstance(env, kinds):
        raise ConfigError(
            f'{name} cannot run on {type(env).__name__}'
        )


def _policy(settings: ConfigDict, env) -> PolicySpec:
    """
    Return the policy named by 'policy' (inline) or 'policy_file', or a
    default: stake everything on wealth processes, uniform on MDPs.
    """
    inline = settings.pop('policy', None)
    policy_file = settings.pop('policy_file', None)
    try:
        if inline is not None:
            return parse_policy_spec(inline, {})
        if policy_file is not None:
            return load_policy_spec(policy_file)
    except SpecParseError as error:
        raise ConfigError(f'invalid policy: {error}')
    if isinstance(env, WealthProcess):
        return PolicySpec.fixed_fraction(1.0)
    return PolicySpec.uniform(env.n_states, env.n_actions)


def _initial_state(mdp: MdpSpec) -> int:

    return int(mdp.initial_dist.argmax())


def _q_frame(mdp_or_grid, q) -> DataFrame:

    rows = []
    for state in range(q.shape[0]):
        for action in range(q.shape[1]):
            if isinstance(mdp_or_grid, MdpSpec):
                names = (mdp_or_grid.state_name(state),
                         mdp_or_grid.action_name(action))
            else:
                names = ('wealth', f'{mdp_or_grid[action]:.4g}')
            rows.append((state, action, *names, float(q[state, action])))
    return DataFrame(rows, columns=['state', 'action', 'state_name',
                                    'action_name', 'q'])


def _evaluate_growth(result: RunResult, env: WealthProcess, policy,
                     settings: ConfigDict, seed: int, out_dir: Path):

    horizon = _pop(settings, 'eval_horizon', 1000)
    n = _pop(settings, 'eval_trajectories', 100)
    growth = evaluate_fraction_policy(env, policy, horizon, n, seed + 1)
    result.write_csv(DataFrame({
        'trajectory': range(n), 'per_step_log_growth': growth
    }, columns=GROWTH_COLUMNS), out_dir / 'evaluation_growth.csv')
    result.metrics['median_log_growth'] = float(median(growth))


def _policy_frame(policy: DiscretizedFractionPolicy) -> DataFrame:

    return DataFrame({'alpha': policy.grid,
                      'probability': policy.probabilities})

# endregion


@ALGORITHMS.register('rollout')
def run_rollout(env, settings: ConfigDict, seed: int,
                out_dir: Path) -> RunResult:
    """
    Roll out a fixed policy and write one trajectory CSV per trajectory.
    """
    horizon = _pop(settings, 'horizon')
    n = _pop(settings, 'n_trajectories', 1)
    policy = _policy(settings, env)
    _reject_unknown(settings, 'rollout')
    records = ensemble_rollout(env, policy, horizon, n, seed)
    trajectory_dir = out_dir / 'trajectories'
    trajectory_dir.mkdir(exist_ok=True)
    result = RunResult()
    for record in records:
        path = trajectory_dir / f'trajectory_{record.stream_id:03d}.csv'
        write_trajectories_csv([record], path)
        result.files.append(path)
    finals = array([record.final_return for record in records])
    initial = records[0].initial_return
    result.metrics.update({
        'mean_final_return': float(finals.mean()),
        'median_final_return': float(median(finals)),
        'max_final_return': float(finals.max()),
    })
    if initial > 0:
        result.metrics['positive_growth_fraction'] = \
            positive_growth_fraction(finals, initial)
        try:
            result.metrics['non_ergodicity_score'] = \
                non_ergodicity_score(records)
        except DomainError as error:
            logger.info(f'no non-ergodicity score: {error}')
    result.plots.append(PlotRequest('returns', list(result.files)))
    return result


@ALGORITHMS.register('ergodicity_gap')
def run_ergodicity_gap(env, settings: ConfigDict, seed: int,
                       out_dir: Path) -> RunResult:
    """
    Compare ensemble averages of the step reward with time averages.
    """
    horizon = _pop(settings, 'horizon')
    n = _pop(settings, 'n_trajectories')
    probe_times = _pop(settings, 'probe_times', [0, horizon - 1])
    burn_in = _pop(settings, 'burn_in', None)
    policy = _policy(settings, env)
    _reject_unknown(settings, 'ergodicity_gap')
    report = ergodicity_gap(env, policy, horizon, n, probe_times, seed,
                            burn_in=burn_in)
    result = RunResult()
    ensemble_path = result.write_csv(report.ensemble_frame(),
                                     out_dir / 'gap_ensemble.csv')
    time_path = result.write_csv(report.time_frame(),
                                 out_dir / 'gap_time.csv')
    result.metrics.update({
        'gap': report.gap,
        'ci_halfwidth': report.ci_halfwidth,
        'strict_gap': report.strict_gap,
        'within_ci': float(report.within_ci),
    })
    if report.asymptotic_gap is not None:
        result.metrics['asymptotic_gap'] = report.asymptotic_gap
    result.plots.append(PlotRequest('gap', [ensemble_path, time_path]))
    return result


@ALGORITHMS.register('reinforce')
def run_reinforce(env, settings: ConfigDict, seed: int,
                  out_dir: Path) -> RunResult:
    """
    Train a fraction policy on raw rewards or log increments and evaluate
    its growth.
    """
    _require(env, WealthProcess, 'reinforce')
    try:
        channel = REWARD_CHANNEL.get_reward_channel(
            _pop(settings, 'reward_channel', 'raw_rewards')
        )
    except ValueError as error:
        raise ConfigError(str(error))
    result = RunResult()
    evaluation = {key: settings.pop(key) for key in
                  ('eval_horizon', 'eval_trajectories') if key in settings}
    config = _build(ReinforceConfig, settings, 'reinforce')
    policy, curve = reinforce_train(env, channel, config, seed)
    curve_path = out_dir / 'learning_curve.csv'
    curve.write_csv(curve_path)
    result.files.append(curve_path)
    result.write_csv(_policy_frame(policy), out_dir / 'policy.csv')
    _evaluate_growth(result, env, policy, evaluation, seed, out_dir)
    result.metrics.update({'mean_alpha': policy.mean_alpha,
                           'greedy_alpha': policy.greedy_alpha})
    result.plots.append(PlotRequest('learning', [curve_path]))
    return result


@ALGORITHMS.register('transform')
def run_transform(env, settings: ConfigDict, seed: int,
                  out_dir: Path) -> RunResult:
    """
    Learn a transformation from a probe and train on its increments.
    """
    _require(env, WealthProcess, 'transform')
    probe_horizon = _pop(settings, 'probe_horizon', None)
    max_retries = _pop(settings, 'max_retries', None)
    probe_fraction = _pop(settings, 'probe_fraction', 1.0)
    loess_config = _build(LoessConfig, _pop(settings, 'loess', {}) or {},
                          'transform.loess')
    evaluation = {key: settings.pop(key) for key in
                  ('eval_horizon', 'eval_trajectories') if key in settings}
    config = _build(ReinforceConfig, settings, 'transform')
    kwargs = {}
    if probe_horizon is not None:
        kwargs['probe_horizon'] = probe_horizon
    if max_retries is not None:
        kwargs['max_retries'] = max_retries
    scatter, curve, policy, learning_curve = learn_and_train(
        env, PolicySpec.fixed_fraction(probe_fraction), config, seed,
        loess_config=loess_config, **kwargs
    )
    result = RunResult()
    scatter_path = result.write_csv(scatter.to_frame(),
                                    out_dir / 'scatter.csv')
    transformation_path = out_dir / 'transformation.csv'
    curve.write_csv(transformation_path)
    curve_path = out_dir / 'learning_curve.csv'
    learning_curve.write_csv(curve_path)
    result.files.extend([transformation_path, curve_path])
    result.write_csv(_policy_frame(policy), out_dir / 'policy.csv')
    _evaluate_growth(result, env, policy, evaluation, seed, out_dir)
    result.metrics.update({'mean_alpha': policy.mean_alpha,
                           'greedy_alpha': policy.greedy_alpha})
    result.plots.append(PlotRequest(
        'transformation', [transformation_path, scatter_path],
        {'log_x': curve.x_scale == 'log'}
    ))
    result.plots.append(PlotRequest('learning', [curve_path]))
    return result


@ALGORITHMS.register('q_learning')
def run_q_learning(env, settings: ConfigDict, seed: int,
                   out_dir: Path) -> RunResult:

    _require(env, MdpSpec, 'q_learning')
    config = _build(QLearningConfig, settings, 'q_learning')
    q, policy = tabular_q_learning(env, config, seed)
    result = RunResult()
    result.write_csv(_q_frame(env, q), out_dir / 'q_table.csv')
    result.metrics['greedy_initial_action'] = float(
        policy.table[_initial_state(env)]
    )
    return result


@ALGORITHMS.register('growth_q')
def run_growth_q(env, settings: ConfigDict, seed: int,
                 out_dir: Path) -> RunResult:
    """
    Multi-step Q-learning on the blend of return and window growth.
    """
    _require(env, (MdpSpec, WealthProcess), 'growth_q')
    config = _build(GrowthQConfig, settings, 'growth_q')
    q, policy, curve = multi_step_growth_q(env, config, seed)
    result = RunResult()
    if isinstance(env, MdpSpec):
        result.write_csv(_q_frame(env, q), out_dir / 'q_table.csv')
        result.metrics['greedy_initial_action'] = float(
            policy.table[_initial_state(env)]
        )
    else:
        grid = fraction_grid(config.grid_points)
        result.write_csv(_q_frame(grid, q), out_dir / 'q_table.csv')
        result.metrics['greedy_alpha'] = float(policy.fraction)
    curve_path = out_dir / 'learning_curve.csv'
    curve.write_csv(curve_path)
    result.files.append(curve_path)
    result.plots.append(PlotRequest('learning', [curve_path]))
    return result


def _bandit_config(settings: ConfigDict, env: MultiplicativeBandit,
                   name: str) -> BanditAgentConfig:

    settings.setdefault('initial_return', env.initial_return)
    return _build(BanditAgentConfig, settings, name)


@ALGORITHMS.register('train_preference')
def run_train_preference(env, settings: ConfigDict, seed: int,
                         out_dir: Path) -> RunResult:

    _require(env, MultiplicativeBandit, 'train_preference')
    episodes = _pop(settings, 'episodes')
    config = _bandit_config(settings, env, 'train_preference')
    agent, safe_frequency = train_preference(config, env.params, episodes,
                                             seed)
    result = RunResult()
    result.write_csv(DataFrame({
        'action': BANDIT_ACTIONS,
        'value': agent.values,
        'count': agent.counts
    }), out_dir / 'agent_values.csv')
    result.metrics['safe_frequency'] = safe_frequency
    return result


def _run_sweep(env, settings: ConfigDict, seed: int, out_dir: Path,
               name: str, horizon: Optional[int] = None) -> RunResult:

    _require(env, MultiplicativeBandit, name)
    p_grid = _pop(settings, 'p_grid')
    episodes = _pop(settings, 'episodes')
    n_agents = _pop(settings, 'n_agents', 20)
    config = _bandit_config(settings, env, name)
    try:
        curve = preference_sweep(config, env.params, p_grid, episodes, seed,
                                 n_agents=n_agents, horizon=horizon)
    except ValueError as error:
        raise ConfigError(f'invalid config for {name}: {error}')
    result = RunResult()
    preference_path = out_dir / 'preference.csv'
    curve.write_csv(preference_path)
    summary_path = out_dir / 'indifference.csv'
    curve.write_summary_csv(summary_path)
    result.files.extend([preference_path, summary_path])
    result.metrics.update({
        'empirical_indifference': curve.empirical_indifference,
        'in_range': float(curve.in_range),
        'p_expected': curve.p_expected,
        'p_growth': curve.p_growth,
    })
    result.plots.append(PlotRequest(
        'preference', [preference_path],
        {'p_expected': curve.p_expected, 'p_growth': curve.p_growth,
         'label': config.update_rule.name}
    ))
    return result


@ALGORITHMS.register('preference_sweep')
def run_preference_sweep(env, settings: ConfigDict, seed: int,
                         out_dir: Path) -> RunResult:

    return _run_sweep(env, settings, seed, out_dir, 'preference_sweep')


@ALGORITHMS.register('time_indexed_preference')
def run_time_indexed_preference(env, settings: ConfigDict, seed: int,
                                out_dir: Path) -> RunResult:

    horizon = _pop(settings, 'horizon')
    settings['update_rule'] = UPDATE_RULE.monte_carlo_trajectory.name
    return _run_sweep(env, settings, seed, out_dir,
                      'time_indexed_preference', horizon=horizon)


@ALGORITHMS.register('wealth_agent')
def run_wealth_agent(env, settings: ConfigDict, seed: int,
                     out_dir: Path) -> RunResult:
    """
    Train a wealth-dependent fraction agent and evaluate it in fixed and
    recursive modes.
    """
    _require(env, CoinTossProcess, 'wealth_agent')
    horizon = _pop(settings, 'eval_horizon', 100)
    n = _pop(settings, 'eval_trajectories', 100)
    config = _build(WealthAgentConfig, settings, 'wealth_agent')
    agent, curve = train_wealth_agent(env.params, config, seed)
    result = RunResult()
    curve_path = out_dir / 'learning_curve.csv'
    curve.write_csv(curve_path)
    result.files.append(curve_path)
    rows = []
    for mode in ('fixed', 'recursive'):
        records = evaluate_wealth_agent(agent, env.params, horizon, n,
                                        seed + 1, mode=mode)
        finals = array([record.final_return for record in records])
        growth = log_ratio(finals, array([env.initial_return] * n)) / horizon
        rows.extend(zip([mode] * n, range(n), finals, growth))
        result.metrics[f'median_log_growth_{mode}'] = float(median(growth))
    result.write_csv(DataFrame(rows, columns=WEALTH_EVALUATION_COLUMNS),
                     out_dir / 'wealth_evaluation.csv')
    result.metrics.update({'initial_alpha': agent.initial_alpha,
                           'slope': agent.slope})
    result.plots.append(PlotRequest('learning', [curve_path]))
    return result


@ALGORITHMS.register('chain_report')
def run_chain_report(env, settings: ConfigDict, seed: int,
                     out_dir: Path) -> RunResult:
    """
    Classify the chain a policy induces. The seed is not used.
    """
    _require(env, MdpSpec, 'chain_report')
    policy = _policy(settings, env)
    _reject_unknown(settings, 'chain_report')
    report = analyze_policy(env, policy)
    result = RunResult()
    text_path = out_dir / 'chain_report.txt'
    text_path.write_text(report.to_text() + '\n')
    yaml_path = out_dir / 'chain_report.yaml'
    with open(yaml_path, 'w') as f:
        yaml.safe_dump(report.to_dict(), f, sort_keys=False)
    dot_path = out_dir / 'condensation.dot'
    dot_path.write_text(
        condensation_dot(report, induced_chain(env, policy))
    )
    result.files.extend([text_path, yaml_path, dot_path])
    result.metrics.update({
        'n_recurrent_classes': float(len(report.recurrent_classes)),
        'n_transient_states': float(len(report.transient_states)),
    })
    return result
