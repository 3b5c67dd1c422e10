import logging
from dataclasses import dataclass
from typing import Callable, Optional, Tuple, Union

from numpy import ndarray, zeros, bincount, concatenate, full, isfinite, \
    log, errstate
from numpy.linalg import norm

from ergodic_rl.enums.reward_channel import REWARD_CHANNEL
from ergodic_rl.exceptions import DivergenceError
from ergodic_rl.learners.fraction_policy import DiscretizedFractionPolicy, \
    fraction_grid
from ergodic_rl.learners.learning_curve import LearningCurve
from ergodic_rl.literals import BASELINE
from ergodic_rl.process.rng_stream import RngStream
from ergodic_rl.process.wealth_process import WealthProcess
from ergodic_rl.settings import FRACTION_GRID_POINTS, LOG_EVERY
from ergodic_rl.utils.arg_checks import check_positive_count

logger = logging.getLogger(__name__)

Transform = Callable[[ndarray], ndarray]


@dataclass(frozen=True)
class ReinforceConfig(object):
    """
    Settings for REINFORCE on a discretized fraction policy.

    Each update averages batch_size episodes of horizon steps, so there are
    episodes // batch_size updates.
    """
    episodes: int
    horizon: int
    learning_rate: float
    baseline: BASELINE = 'mean'
    batch_size: int = 1
    normalize: bool = False
    temperature: float = 1.0
    grid_points: int = FRACTION_GRID_POINTS
    log_every: int = LOG_EVERY

    def __post_init__(self):

        check_positive_count(self.episodes, 'episodes')
        check_positive_count(self.horizon, 'horizon')
        check_positive_count(self.batch_size, 'batch_size')
        check_positive_count(self.log_every, 'log_every')
        if self.learning_rate < 0:
            raise ValueError(
                f'learning_rate must be non-negative, got {self.learning_rate}'
            )
        if self.baseline not in ('none', 'mean'):
            raise ValueError(
                f'baseline must be in [\'none\', \'mean\'], got {self.baseline}'
            )

    @property
    def n_updates(self) -> int:

        return max(1, self.episodes // self.batch_size)


def channel_rewards(returns: ndarray, initial_return: float,
                    reward_channel: REWARD_CHANNEL,
                    transform: Optional[Transform] = None) -> ndarray:
    """
    Return the per-step rewards seen by the learner for a batch of return
    paths: raw increments, or increments of the transformed return.

    :param returns: Return paths R_1..R_T along the last axis.
    :param initial_return: R_0.
    :param reward_channel: Which rewards to learn from.
    :param transform: h for transformed increments; log if None.
    """
    series = concatenate(
        [full(returns.shape[:-1] + (1,), initial_return), returns], axis=-1
    )
    if reward_channel is REWARD_CHANNEL.transformed_increments:
        with errstate(divide='ignore', invalid='ignore'):
            series = (transform or log)(series)
    return series[..., 1:] - series[..., :-1]


def rewards_to_go(rewards: ndarray) -> ndarray:

    return rewards[..., ::-1].cumsum(axis=-1)[..., ::-1]


def policy_gradient(policy: DiscretizedFractionPolicy, indices: ndarray,
                    advantages: ndarray) -> ndarray:
    """
    Return the batch mean over episodes of sum_t A_t grad log pi(a_t).

    :param policy: The policy the actions were drawn from.
    :param indices: Grid index per (episode, step).
    :param advantages: Advantage per (episode, step).
    """
    n_episodes = indices.shape[0] if indices.ndim > 1 else 1
    weighted = bincount(indices.ravel(), weights=advantages.ravel(),
                        minlength=policy.grid.size)
    gradient = weighted - advantages.sum() * policy.probabilities
    return gradient / (n_episodes * policy.temperature)


def reinforce_train(env: WealthProcess,
                    reward_channel: Union[str, REWARD_CHANNEL],
                    config: ReinforceConfig,
                    seed: int,
                    transform: Optional[Transform] = None,
                    policy: Optional[DiscretizedFractionPolicy] = None
                    ) -> Tuple[DiscretizedFractionPolicy, LearningCurve]:
    """
    Train a fraction policy by Monte-Carlo policy gradient on the episode sum
    of the chosen reward channel, weighting each step by its reward-to-go.

    All draws come from RngStream(seed, 0): per update, the action uniforms
    of the batch and then the transition uniforms.

    :param env: The wealth process to train on.
    :param reward_channel: raw_rewards or transformed_increments.
    :param config: Training settings.
    :param seed: Seed of the training stream.
    :param transform: h for transformed increments; log if None.
    :param policy: Starting policy, uniform over the grid if None.
    :raises DivergenceError: if the logits become non-finite.
    """
    reward_channel = REWARD_CHANNEL.get_reward_channel(reward_channel)
    policy = policy.copy() if policy is not None else \
        DiscretizedFractionPolicy(grid=fraction_grid(config.grid_points),
                                  temperature=config.temperature)
    generator = RngStream(seed, 0).generator()
    shape = (config.batch_size, config.horizon)
    running_baseline = zeros(config.horizon)
    n_seen = 0
    curve = LearningCurve()
    for update in range(config.n_updates):
        indices, fractions = policy.sample_fractions(shape, generator)
        uniforms = generator.random(shape)
        returns = env.simulate(fractions, uniforms)
        rewards = channel_rewards(returns, env.initial_return,
                                  reward_channel, transform)
        to_go = rewards_to_go(rewards)
        advantages = to_go
        if config.baseline == 'mean':
            advantages = to_go - running_baseline
            n_seen += config.batch_size
            running_baseline = running_baseline + \
                (to_go - running_baseline).sum(axis=0) / n_seen
        if config.normalize:
            spread = advantages.std()
            if spread > 0:
                advantages = (advantages - advantages.mean()) / spread
        gradient = policy_gradient(policy, indices, advantages)
        policy.logits = policy.logits + config.learning_rate * gradient
        if not policy.is_finite:
            raise DivergenceError(
                f'policy logits became non-finite at update {update + 1}; '
                f'gradient norm was {norm(gradient)}'
            )
        logger.debug(f'update {update + 1}: gradient norm {norm(gradient)}')
        iteration = update + 1
        if iteration % config.log_every == 0 or iteration == config.n_updates:
            objective = float(rewards.sum(axis=1).mean()) \
                if isfinite(rewards).all() else float('-inf')
            curve.append(iteration, objective, float(returns[:, -1].mean()),
                         policy.mean_alpha)
            logger.info(
                f'update {iteration}/{config.n_updates}: objective '
                f'{objective:.6g}, mean alpha {policy.mean_alpha:.4f}'
            )
    return policy, curve
