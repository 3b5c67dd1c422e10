import logging
from bisect import bisect_right
from dataclasses import dataclass
from math import log
from typing import Optional, Tuple, Union, Sequence

from numpy import ndarray, asarray, full, zeros, int64

from ergodic_rl.exceptions import UndefinedGrowth
from ergodic_rl.growth.window_buffer import WindowBuffer, \
    geometric_mean_window
from ergodic_rl.learners.fraction_policy import fraction_grid
from ergodic_rl.learners.learning_curve import LearningCurve
from ergodic_rl.learners.q_learning import greedy_action
from ergodic_rl.process.mdp_spec import MdpSpec
from ergodic_rl.process.policy_spec import PolicySpec
from ergodic_rl.process.rng_stream import RngStream
from ergodic_rl.process.wealth_process import WealthProcess
from ergodic_rl.settings import RUIN_FLOOR, FRACTION_GRID_POINTS, LOG_EVERY
from ergodic_rl.utils.arg_checks import check_positive_count, \
    check_probability
from ergodic_rl.utils.number_utils import clamp_log

logger = logging.getLogger(__name__)

CONFIG_KEYS = {'lambda': 'lam'}


@dataclass(frozen=True)
class GrowthQConfig(object):
    """
    Settings for multi-step Q-learning on a blend of the discounted return and
    the window growth rate.

    lam is the blend weight (key 'lambda' in experiment configs), gamma the
    discount and window_n the window length N used for both the N-step
    return and the growth estimate. The chosen action is held for the whole
    window. Step sizes are lr0 / (1 + n) ** lr_decay for a pair updated n
    times before; epsilon falls linearly from eps0 to eps_min over eps_decay
    decisions. Episodes last episode_steps steps.
    """
    lam: float
    gamma: float
    window_n: int
    total_steps: int
    lr0: float = 0.5
    lr_decay: float = 0.6
    eps0: float = 1.0
    eps_min: float = 0.05
    eps_decay: Optional[int] = None
    episode_steps: Optional[int] = None
    ruin_floor: float = RUIN_FLOOR
    grid_points: int = FRACTION_GRID_POINTS
    log_every: int = LOG_EVERY

    def __post_init__(self):

        check_probability(self.lam, 'lambda')
        if not 0 < self.gamma < 1:
            raise ValueError(f'gamma must be in (0, 1), got {self.gamma}')
        check_positive_count(self.window_n, 'window_n')
        check_positive_count(self.total_steps, 'total_steps')
        check_positive_count(self.log_every, 'log_every')
        if self.episode_steps is not None:
            check_positive_count(self.episode_steps, 'episode_steps')
        if self.lr0 <= 0 or self.lr_decay < 0:
            raise ValueError('lr0 must be positive and lr_decay non-negative')
        check_probability(self.eps0, 'eps0')
        check_probability(self.eps_min, 'eps_min')

    @staticmethod
    def from_dict(items: dict) -> 'GrowthQConfig':
        """
        Create a config from experiment config keys, where the blend weight is
        called 'lambda'.
        """
        return GrowthQConfig(**{
            CONFIG_KEYS.get(key, key): value for key, value in items.items()
        })

    # region properties

    @property
    def steps_per_episode(self) -> int:

        return self.episode_steps or 100 * self.window_n

    @property
    def floor(self) -> float:

        return clamp_log(self.ruin_floor)

    @property
    def n_decisions(self) -> int:

        return -(-self.total_steps // self.window_n)

    # endregion

    def epsilon(self, decision: int) -> float:

        decay = self.eps_decay or max(1, self.n_decisions // 2)
        progress = min(1.0, decision / decay)
        return self.eps0 + (self.eps_min - self.eps0) * progress

    def learning_rate(self, visits: int) -> float:

        return self.lr0 / (1 + visits) ** self.lr_decay


def regularized_backup(q_row: Sequence[float], reward: float,
                       growth_estimate: Optional[float],
                       config: GrowthQConfig,
                       bootstrap_discount: Optional[float] = None,
                       ruined: bool = False) -> float:
    """
    Return the update target
    (1 - lam) (reward + bootstrap_discount max q) + lam growth_term.

    growth_term is the window log growth window_n ln(growth_estimate). On ruin
    it is the ruin floor and nothing is bootstrapped. Without a growth
    estimate the target is the plain return target.

    :param q_row: Action values of the next state.
    :param reward: Discounted reward collected over the backup.
    :param growth_estimate: Per-step growth factor of the window, or None.
    :param config: Blend settings.
    :param bootstrap_discount: Discount applied to max q, gamma if None.
    :param ruined: Whether the backup ended in ruin.
    """
    if bootstrap_discount is None:
        bootstrap_discount = config.gamma
    expected = reward if ruined else \
        reward + bootstrap_discount * max(q_row)
    if config.lam == 0 or (growth_estimate is None and not ruined):
        return expected
    if ruined or growth_estimate <= 0:
        growth_term = config.floor
    else:
        growth_term = config.window_n * log(growth_estimate)
    if config.lam == 1:
        return growth_term
    return (1 - config.lam) * expected + config.lam * growth_term


def _draw(cumulative_row, u: float) -> int:

    return min(bisect_right(cumulative_row, u), len(cumulative_row) - 1)


class _MdpWindows(object):
    """
    Steps an MDP for held actions, tracking the return.
    """
    def __init__(self, mdp: MdpSpec):

        self.mdp = mdp
        self.cum_kernel = mdp.cumulative_kernel.tolist()
        self.cum_initial = mdp.initial_dist.cumsum().tolist()
        self.reward = mdp.reward.tolist()
        self.ruin = set(mdp.ruin_states)
        self.n_states = mdp.n_states
        self.n_actions = mdp.n_actions
        self.initial_return = mdp.initial_return

    def reset(self, generator) -> int:

        return _draw(self.cum_initial, generator.random())

    def run(self, state: int, action: int, R: float, steps: int,
            generator) -> Tuple[list, list, int, bool]:

        rewards = []
        returns = [R]
        for _ in range(steps):
            next_state = _draw(self.cum_kernel[state][action],
                               generator.random())
            r = self.reward[state][action][next_state]
            R += r
            rewards.append(r)
            returns.append(R)
            state = next_state
            if state in self.ruin or R <= 0:
                return rewards, returns, state, True
        return rewards, returns, state, False


class _WealthWindows(object):
    """
    Steps a wealth process for held stake fractions.
    """
    def __init__(self, env: WealthProcess, grid: ndarray):

        self.env = env
        self.grid = grid
        self.n_states = 1
        self.n_actions = grid.size
        self.initial_return = env.initial_return

    def reset(self, generator) -> int:

        return 0

    def run(self, state: int, action: int, R: float, steps: int,
            generator) -> Tuple[list, list, int, bool]:

        path = self.env.simulate(full(steps, self.grid[action]),
                                 generator.random(steps),
                                 initial_returns=R).tolist()
        returns = [R]
        for value in path:
            returns.append(value)
            if value <= 0:
                break
        rewards = [b - a for a, b in zip(returns[:-1], returns[1:])]
        return rewards, returns, 0, returns[-1] <= 0


def multi_step_growth_q(env: Union[MdpSpec, WealthProcess],
                        config: GrowthQConfig,
                        seed: int,
                        total_steps: Optional[int] = None
                        ) -> Tuple[ndarray, PolicySpec, LearningCurve]:
    """
    Learn action values with N-step Q-learning on the growth-regularized
    target.

    At each decision the epsilon-greedy action is held for N steps, or until
    ruin or the end of the episode. The discounted sum of the window's rewards
    and gamma ** N bootstrap the return part of the target; the window's
    geometric mean growth feeds the growth part. A window cut short by the end
    of an episode backs up the return part only. Ruin ends the episode with
    the growth term at the ruin floor.

    Wealth processes have a single state and one action per stake fraction on
    the grid; their greedy policy is returned as a fixed fraction.

    :param env: A finite MDP or a wealth process.
    :param config: Learner settings.
    :param seed: All draws come from RngStream(seed, 0).
    :param total_steps: Overrides config.total_steps.
    """
    total_steps = total_steps or config.total_steps
    is_wealth = isinstance(env, WealthProcess)
    grid = fraction_grid(config.grid_points) if is_wealth else None
    windows = _WealthWindows(env, grid) if is_wealth else _MdpWindows(env)
    generator = RngStream(seed, 0).generator()
    q = zeros((windows.n_states, windows.n_actions)).tolist()
    visits = zeros((windows.n_states, windows.n_actions), dtype=int64).tolist()
    curve = LearningCurve(extra_columns=('growth_estimate',))
    buffer = WindowBuffer(config.window_n)
    discounts = [config.gamma ** i for i in range(config.window_n)]
    state = windows.reset(generator)
    R = windows.initial_return
    episode_step = 0
    steps = 0
    decision = 0
    n_ruins = 0
    recent_targets, recent_growth, finals = [], [], []
    while steps < total_steps:
        if generator.random() < config.epsilon(decision):
            action = int(generator.integers(windows.n_actions))
        else:
            action = greedy_action(q[state])
        length = min(config.window_n, config.steps_per_episode - episode_step,
                     total_steps - steps)
        rewards, returns, next_state, ruined = windows.run(
            state, action, R, length, generator
        )
        taken = len(rewards)
        steps += taken
        episode_step += taken
        discounted = sum(d * r for d, r in zip(discounts, rewards))
        growth = None
        if taken == config.window_n and not ruined:
            buffer.clear()
            buffer.extend(returns)
            try:
                growth = geometric_mean_window(buffer)
            except UndefinedGrowth:
                ruined = True
        if ruined:
            n_ruins += 1
            if n_ruins == 1:
                logger.warning(f'first ruin at step {steps}')
        target = regularized_backup(
            q[next_state], discounted, growth, config,
            bootstrap_discount=config.gamma ** taken, ruined=ruined
        )
        lr = config.learning_rate(visits[state][action])
        visits[state][action] += 1
        q[state][action] += lr * (target - q[state][action])
        recent_targets.append(target)
        if growth is not None:
            recent_growth.append(growth)
        R = returns[-1]
        decision += 1
        if ruined or episode_step >= config.steps_per_episode:
            finals.append(R)
            state = windows.reset(generator)
            R = windows.initial_return
            episode_step = 0
        else:
            state = next_state
        if decision % config.log_every == 0 or steps >= total_steps:
            greedy = greedy_action(q[0])
            curve.append(
                decision,
                sum(recent_targets) / len(recent_targets),
                sum(finals) / len(finals) if finals else R,
                float(grid[greedy]) if is_wealth else None,
                growth_estimate=(sum(recent_growth) / len(recent_growth)
                                 if recent_growth else float('nan'))
            )
            logger.info(f'decision {decision}, step {steps}/{total_steps}')
            recent_targets, recent_growth, finals = [], [], []
    if n_ruins:
        logger.warning(f'{n_ruins} windows ended in ruin')
    q = asarray(q)
    if is_wealth:
        return q, PolicySpec.fixed_fraction(float(grid[greedy_action(q[0])])), \
            curve
    return q, PolicySpec.deterministic(
        [greedy_action(row) for row in q.tolist()]
    ), curve
