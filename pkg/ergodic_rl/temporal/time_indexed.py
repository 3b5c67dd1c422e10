import logging
from typing import Tuple

from numpy import ndarray, zeros, full, arange, exp, log
from numpy.random import Generator

from ergodic_rl.environments.bandit import BanditParams, bandit_factors, SAFE
from ergodic_rl.process.rng_stream import RngStream
from ergodic_rl.temporal.bandit_agent import BanditAgentConfig, \
    epsilon_greedy, greedy_actions, step_sizes
from ergodic_rl.utils.arg_checks import check_positive_count

logger = logging.getLogger(__name__)


class TimeIndexedAgent(object):
    """
    A bandit agent with one action-value table per round of a fixed-length
    episode, each trained towards the episode's per-round growth factor
    (R_H / R_0) ** (1 / H).
    """
    def __init__(self, config: BanditAgentConfig, values: ndarray,
                 counts: ndarray):

        self.config: BanditAgentConfig = config
        self.values: ndarray = values
        self.counts: ndarray = counts

    @property
    def horizon(self) -> int:

        return self.values.shape[0]

    @property
    def greedy_policy(self) -> ndarray:
        """
        Return the greedy action for each round.
        """
        return greedy_actions(self.values)

    @property
    def safe_preference(self) -> float:
        """
        Return the share of rounds whose greedy action is safe.
        """
        return float((self.greedy_policy == SAFE).mean())

    def __repr__(self) -> str:

        return (f'TimeIndexedAgent(horizon={self.horizon}, '
                f'safe_preference={self.safe_preference:.3f})')


def trajectory_growth_factor(factors: ndarray) -> ndarray:
    """
    Return (R_H / R_0) ** (1 / H) for each row of per-round factors.
    """
    return exp(log(factors).mean(axis=-1))


def time_indexed_population(config: BanditAgentConfig, params: BanditParams,
                            horizon: int, episodes: int,
                            generator: Generator,
                            n_agents: int) -> Tuple[ndarray, ndarray]:
    """
    Train n independent time-indexed agents by every-visit Monte Carlo and
    return values and counts of shape (n_agents, horizon, 2).

    Values are frozen within an episode, so each episode draws all of its
    uniforms at once: exploration, random action and risky outcome, each of
    shape (n_agents, horizon).
    """
    check_positive_count(horizon, 'horizon')
    check_positive_count(episodes, 'episodes')
    values = full((n_agents, horizon, 2), config.initial_value)
    counts = zeros((n_agents, horizon, 2))
    agents = arange(n_agents)[:, None]
    rounds = arange(horizon)[None, :]
    for _ in range(episodes):
        u_explore, u_action, u_outcome = generator.random(
            (3, n_agents, horizon)
        )
        actions = epsilon_greedy(values, config.epsilon, u_explore, u_action)
        factors = bandit_factors(actions, u_outcome, params)
        target = trajectory_growth_factor(factors)[:, None]
        counts[agents, rounds, actions] += 1
        step = step_sizes(config, counts[agents, rounds, actions])
        values[agents, rounds, actions] += step * (
            target - values[agents, rounds, actions]
        )
    return values, counts


def monte_carlo_trajectory_update(config: BanditAgentConfig,
                                  params: BanditParams, horizon: int,
                                  episodes: int, seed: int
                                  ) -> TimeIndexedAgent:
    """
    Train one time-indexed agent at a fixed loss probability.

    As the horizon grows the per-round target approaches exp of the expected
    log factor, so the agent's indifference point moves towards p_T.

    :param config: Agent settings. The update rule is not consulted.
    :param params: Bandit factors.
    :param horizon: Rounds per episode.
    :param episodes: Training episodes.
    :param seed: Draws come from RngStream(seed, 0).
    """
    generator = RngStream(seed, 0).generator()
    values, counts = time_indexed_population(
        config, params, horizon, episodes, generator, 1
    )
    agent = TimeIndexedAgent(config, values[0], counts[0])
    logger.info(f'time-indexed agent at p_loss={params.p_loss}, '
                f'horizon {horizon}: {agent}')
    return agent
