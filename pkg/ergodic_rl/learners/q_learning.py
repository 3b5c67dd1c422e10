import logging
from bisect import bisect_right
from dataclasses import dataclass
from typing import Optional, Tuple

from numpy import ndarray, asarray, full, zeros, int64

from ergodic_rl.process.mdp_spec import MdpSpec
from ergodic_rl.process.policy_spec import PolicySpec
from ergodic_rl.process.rng_stream import RngStream
from ergodic_rl.settings import LOG_EVERY
from ergodic_rl.utils.arg_checks import check_positive_count, \
    check_probability

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QLearningConfig(object):
    """
    Settings for tabular Q-learning.

    The step size for a pair visited n times before is
    lr0 / (1 + n) ** lr_decay, so lr_decay=0 gives a constant step. Epsilon
    falls linearly from eps0 to eps_min over eps_decay_steps, half the run by
    default. Episodes restart from the initial distribution every
    episode_steps steps or on entering a ruin state.
    """
    steps: int
    discount: float
    lr0: float = 0.5
    lr_decay: float = 0.6
    eps0: float = 1.0
    eps_min: float = 0.05
    eps_decay_steps: Optional[int] = None
    episode_steps: int = 100
    initial_q: float = 0.0
    log_every: int = 10 * LOG_EVERY

    def __post_init__(self):

        check_positive_count(self.steps, 'steps')
        check_positive_count(self.episode_steps, 'episode_steps')
        check_positive_count(self.log_every, 'log_every')
        if not 0 <= self.discount < 1:
            raise ValueError(
                f'discount must be in [0, 1), got {self.discount}'
            )
        if self.lr0 <= 0 or self.lr_decay < 0:
            raise ValueError('lr0 must be positive and lr_decay non-negative')
        check_probability(self.eps0, 'eps0')
        check_probability(self.eps_min, 'eps_min')

    @property
    def decay_steps(self) -> int:

        if self.eps_decay_steps is not None:
            return max(1, self.eps_decay_steps)
        return max(1, self.steps // 2)

    def epsilon(self, step: int) -> float:

        progress = min(1.0, step / self.decay_steps)
        return self.eps0 + (self.eps_min - self.eps0) * progress

    def learning_rate(self, visits: int) -> float:

        return self.lr0 / (1 + visits) ** self.lr_decay


def _draw(cumulative_row, u: float) -> int:

    return min(bisect_right(cumulative_row, u), len(cumulative_row) - 1)


def greedy_action(q_row) -> int:
    """
    Return the index of the largest value, the lowest index on ties.
    """
    best = 0
    for action in range(1, len(q_row)):
        if q_row[action] > q_row[best]:
            best = action
    return best


def tabular_q_learning(mdp: MdpSpec, config: QLearningConfig,
                       seed: int) -> Tuple[ndarray, PolicySpec]:
    """
    Learn action values with one-step Q-learning and epsilon-greedy
    exploration, and return them with the greedy policy.

    Each step draws, from RngStream(seed, 0), an exploration uniform, a
    random action when exploring, and a transition uniform. Entering a ruin
    state ends the episode without bootstrapping.
    """
    generator = RngStream(seed, 0).generator()
    cum_kernel = mdp.cumulative_kernel.tolist()
    cum_initial = mdp.initial_dist.cumsum().tolist()
    reward = mdp.reward.tolist()
    ruin = set(mdp.ruin_states)
    q = full((mdp.n_states, mdp.n_actions), config.initial_q).tolist()
    for state in ruin:
        q[state] = [0.0] * mdp.n_actions
    visits = zeros((mdp.n_states, mdp.n_actions), dtype=int64).tolist()
    state = _draw(cum_initial, generator.random())
    episode_step = 0
    for step in range(config.steps):
        if generator.random() < config.epsilon(step):
            action = int(generator.integers(mdp.n_actions))
        else:
            action = greedy_action(q[state])
        next_state = _draw(cum_kernel[state][action], generator.random())
        r = reward[state][action][next_state]
        terminal = next_state in ruin
        target = r if terminal else r + config.discount * max(q[next_state])
        lr = config.learning_rate(visits[state][action])
        visits[state][action] += 1
        q[state][action] += lr * (target - q[state][action])
        episode_step += 1
        if terminal or episode_step == config.episode_steps:
            state = _draw(cum_initial, generator.random())
            episode_step = 0
        else:
            state = next_state
        if (step + 1) % config.log_every == 0:
            logger.info(f'step {step + 1}/{config.steps}: '
                        f'epsilon {config.epsilon(step):.3f}')
    q = asarray(q)
    return q, PolicySpec.deterministic(
        [greedy_action(row) for row in q.tolist()]
    )
