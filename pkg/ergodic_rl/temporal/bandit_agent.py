import logging
from dataclasses import dataclass
from math import log
from typing import Optional, Tuple, Union

from numpy import ndarray, zeros, full, where, arange, log as np_log
from numpy.random import Generator
from pandas import DataFrame

from ergodic_rl.enums.update_rule import UPDATE_RULE
from ergodic_rl.environments.bandit import BanditParams, BANDIT_ACTIONS, \
    SAFE, RISK, bandit_factors, bandit_step
from ergodic_rl.process.rng_stream import RngStream, RandomSource, \
    as_generator
from ergodic_rl.settings import TRAINING_EPSILON
from ergodic_rl.utils.arg_checks import check_probability, \
    check_positive_count

logger = logging.getLogger(__name__)

EPISODE_LOG_COLUMNS = ['step', 'action', 'outcome', 'factor', 'return']


@dataclass(frozen=True)
class BanditAgentConfig(object):
    """
    Settings for a two-action bandit agent.

    one_step_expected agents average the realised factor of each action,
    temporal_compounded agents its log. step_size None gives sample averages.
    Exploration is epsilon-greedy during training and greedy in evaluation;
    greedy ties go to the safe action.
    """
    update_rule: Union[str, UPDATE_RULE] = UPDATE_RULE.one_step_expected
    epsilon: float = TRAINING_EPSILON
    step_size: Optional[float] = None
    initial_value: float = 0.0
    initial_return: float = 1.0
    steps_per_episode: int = 1

    def __post_init__(self):

        object.__setattr__(self, 'update_rule',
                           UPDATE_RULE.get_update_rule(self.update_rule))
        check_probability(self.epsilon, 'epsilon')
        check_positive_count(self.steps_per_episode, 'steps_per_episode')
        if self.step_size is not None and not 0 <= self.step_size <= 1:
            raise ValueError(
                f'step_size must be in [0, 1], got {self.step_size}'
            )
        if self.initial_return <= 0:
            raise ValueError('initial_return must be positive')


def step_sizes(config: BanditAgentConfig, counts):
    """
    Return the averaging step for the given visit counts.
    """
    if config.step_size is None:
        return 1.0 / counts
    return config.step_size


def update_signal(rule: UPDATE_RULE, factor):
    """
    Return what an agent averages for a realised factor: the factor itself,
    or its log for growth-based updates.
    """
    if rule is UPDATE_RULE.temporal_compounded:
        return np_log(factor) if isinstance(factor, ndarray) else log(factor)
    return factor


def greedy_actions(values: ndarray) -> ndarray:
    """
    Return the greedy action along the last axis, safe on ties.
    """
    return where(values[..., RISK] > values[..., SAFE], RISK, SAFE)


def epsilon_greedy(values: ndarray, epsilon: float,
                   u_explore, u_action) -> ndarray:
    """
    Return epsilon-greedy actions: explore when u_explore < epsilon, then
    pick risk when u_action < 0.5.
    """
    random_action = where(u_action < 0.5, RISK, SAFE)
    return where(u_explore < epsilon, random_action, greedy_actions(values))


class BanditAgent(object):
    """
    Action values for the safe and risky actions of the multiplicative bandit.
    """
    def __init__(self, config: Optional[BanditAgentConfig] = None):

        self.config: BanditAgentConfig = config or BanditAgentConfig()
        self.values: ndarray = full(2, self.config.initial_value)
        self.counts: ndarray = zeros(2)

    @property
    def prefers_safe(self) -> bool:

        return int(greedy_actions(self.values)) == SAFE

    def choose(self, generator: Generator, epsilon: Optional[float] = None
               ) -> int:
        """
        Return an action, drawing two uniforms.
        """
        epsilon = self.config.epsilon if epsilon is None else epsilon
        u_explore, u_action = generator.random(2)
        return int(epsilon_greedy(self.values, epsilon, u_explore, u_action))

    def update(self, action: int, factor: float):

        self.counts[action] += 1
        step = step_sizes(self.config, self.counts[action])
        signal = update_signal(self.config.update_rule, factor)
        self.values[action] += step * (signal - self.values[action])

    def __repr__(self) -> str:

        return (f'BanditAgent({self.config.update_rule.name}, '
                f'values={self.values.tolist()})')


def temporal_episode(agent: BanditAgent, params: BanditParams, steps: int,
                     rng: RandomSource, learn: bool = True
                     ) -> Tuple[float, DataFrame]:
    """
    Play one episode of repeated bandit rounds on a compounding return,
    updating the agent after every round.

    :param agent: The agent, updated in place when learn is True.
    :param params: Bandit factors.
    :param steps: Rounds in the episode.
    :param rng: Generator for all draws: two per choice, one per risky round.
    :param learn: Whether to update the agent.
    :return: The final return and a log with one row per round.
    """
    check_positive_count(steps, 'steps')
    generator = as_generator(rng)
    factors = {'safe': params.r_safe, 'win': params.r_win,
               'loss': params.r_loss}
    R = agent.config.initial_return
    rows = []
    for step in range(steps):
        action = agent.choose(generator, None if learn else 0.0)
        _, outcome = bandit_step(R, action, params, generator)
        factor = factors[outcome]
        R = R * factor
        if learn:
            agent.update(action, factor)
        rows.append((step, BANDIT_ACTIONS[action], outcome, factor, R))
    return R, DataFrame(rows, columns=EPISODE_LOG_COLUMNS)


def train_population(config: BanditAgentConfig, params: BanditParams,
                     episodes: int, generator: Generator,
                     n_agents: int) -> Tuple[ndarray, ndarray]:
    """
    Train n independent agents side by side and return their values and
    counts, each of shape (n_agents, 2).

    Each round draws three uniforms per agent: exploration, random action
    and risky outcome.
    """
    if config.update_rule is UPDATE_RULE.monte_carlo_trajectory:
        raise ValueError(
            'monte_carlo_trajectory agents are trained per time step, '
            'see time_indexed_population'
        )
    check_positive_count(episodes, 'episodes')
    values = full((n_agents, 2), config.initial_value)
    counts = zeros((n_agents, 2))
    rows = arange(n_agents)
    for _ in range(episodes * config.steps_per_episode):
        u_explore, u_action, u_outcome = generator.random((3, n_agents))
        actions = epsilon_greedy(values, config.epsilon, u_explore, u_action)
        factors = bandit_factors(actions, u_outcome, params)
        signal = update_signal(config.update_rule, factors)
        counts[rows, actions] += 1
        step = step_sizes(config, counts[rows, actions])
        values[rows, actions] += step * (signal - values[rows, actions])
    return values, counts


def train_preference(config: BanditAgentConfig, params: BanditParams,
                     episodes: int, seed: int) -> Tuple[BanditAgent, float]:
    """
    Train one agent at a fixed loss probability and return it with its safe
    choice frequency under greedy evaluation.

    All draws come from RngStream(seed, 0).
    """
    generator = RngStream(seed, 0).generator()
    values, counts = train_population(config, params, episodes, generator, 1)
    agent = BanditAgent(config)
    agent.values = values[0]
    agent.counts = counts[0]
    safe_frequency = 1.0 if agent.prefers_safe else 0.0
    logger.info(f'{config.update_rule.name} agent at p_loss={params.p_loss}: '
                f'values {agent.values.tolist()}')
    return agent, safe_frequency
