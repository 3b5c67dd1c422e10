import logging
from dataclasses import dataclass
from typing import List, Tuple

from numpy import ndarray, zeros, where, exp, log, isfinite, stack, \
    empty, int64
from scipy.special import expit

from ergodic_rl.environments.coin_toss import CoinTossParams, CoinTossProcess
from ergodic_rl.exceptions import DivergenceError
from ergodic_rl.learners.learning_curve import LearningCurve
from ergodic_rl.literals import WEALTH_OBJECTIVE, EVALUATION_MODE
from ergodic_rl.process.rng_stream import RngStream
from ergodic_rl.process.trajectory import TrajectoryRecord
from ergodic_rl.settings import LOG_EVERY
from ergodic_rl.utils.arg_checks import check_positive_count

logger = logging.getLogger(__name__)

WEALTH_OBJECTIVES = ('growth', 'expected')
EVALUATION_MODES = ('fixed', 'recursive')


@dataclass(frozen=True)
class WealthAgentConfig(object):

    objective: WEALTH_OBJECTIVE = 'growth'
    updates: int = 300
    horizon: int = 50
    batch_size: int = 64
    learning_rate: float = 5.0
    initial_bias: float = 0.0
    initial_slope: float = 0.0
    log_every: int = LOG_EVERY

    def __post_init__(self):

        if self.objective not in WEALTH_OBJECTIVES:
            raise ValueError(
                f'objective must be in {WEALTH_OBJECTIVES}, '
                f'got {self.objective}'
            )
        check_positive_count(self.updates, 'updates')
        check_positive_count(self.horizon, 'horizon')
        check_positive_count(self.batch_size, 'batch_size')
        if self.learning_rate <= 0:
            raise ValueError('learning_rate must be positive')


class WealthFractionAgent(object):
    """
    Chooses the staked fraction from the current return:
    alpha = sigmoid(bias + slope * ln(R / R_0)).
    """
    def __init__(self, bias: float = 0.0, slope: float = 0.0,
                 objective: WEALTH_OBJECTIVE = 'growth'):

        self.bias: float = float(bias)
        self.slope: float = float(slope)
        self.objective: WEALTH_OBJECTIVE = objective

    def alpha(self, log_ratio):
        """
        Return the fraction staked at log return ratio ln(R / R_0).
        """
        return expit(self.bias + self.slope * log_ratio)

    @property
    def initial_alpha(self) -> float:

        return float(self.alpha(0.0))

    def to_dict(self) -> dict:

        return {'bias': self.bias, 'slope': self.slope,
                'objective': self.objective}

    def __repr__(self) -> str:

        return (f'WealthFractionAgent(bias={self.bias:.4f}, '
                f'slope={self.slope:.4f}, objective={self.objective})')


def _batch_gradient(agent: WealthFractionAgent, params: CoinTossParams,
                    uniforms: ndarray) -> Tuple[float, float, float, ndarray]:
    """
    Return the per-step objective and its gradient in (bias, slope) for a
    batch of coin-toss paths, with the final log return ratios.

    The growth objective is the realised log factor of each step, the
    expected one the realised increment in units of R_0. Gradients flow
    through each step's fraction with the current return held fixed.
    """
    batch_size, horizon = uniforms.shape
    x = zeros(batch_size)
    objective = grad_bias = grad_slope = 0.0
    for t in range(horizon):
        alpha = agent.alpha(x)
        stake_mult = where(uniforms[:, t] < params.p_win,
                           params.win_mult, -params.loss_mult)
        factor = 1 + alpha * stake_mult
        d_alpha = alpha * (1 - alpha)
        if agent.objective == 'growth':
            step_objective = log(factor)
            step_gradient = stake_mult / factor * d_alpha
        else:
            scale = exp(x)
            step_objective = scale * alpha * stake_mult
            step_gradient = scale * stake_mult * d_alpha
        objective += step_objective.sum()
        grad_bias += step_gradient.sum()
        grad_slope += (step_gradient * x).sum()
        x = x + log(factor)
    n = batch_size * horizon
    return objective / n, grad_bias / n, grad_slope / n, x


def train_wealth_agent(params: CoinTossParams, config: WealthAgentConfig,
                       seed: int
                       ) -> Tuple[WealthFractionAgent, LearningCurve]:
    """
    Train a wealth-dependent fraction agent on the coin toss by pathwise
    gradient ascent.

    Under the growth objective the fraction at R = R_0 settles near the
    growth-optimal fraction; under the expected objective it is driven
    towards staking everything.

    :param params: Coin-toss parameters.
    :param config: Training settings.
    :param seed: Uniforms come from RngStream(seed, 0), one (batch, horizon)
                 block per update.
    """
    agent = WealthFractionAgent(config.initial_bias, config.initial_slope,
                                config.objective)
    generator = RngStream(seed, 0).generator()
    curve = LearningCurve()
    for update in range(config.updates):
        uniforms = generator.random((config.batch_size, config.horizon))
        objective, grad_bias, grad_slope, x = _batch_gradient(
            agent, params, uniforms
        )
        agent.bias += config.learning_rate * grad_bias
        agent.slope += config.learning_rate * grad_slope
        if not (isfinite(agent.bias) and isfinite(agent.slope)):
            raise DivergenceError(
                f'wealth agent parameters diverged at update {update}'
            )
        if update % config.log_every == 0 or update == config.updates - 1:
            mean_final = float(params.initial_return * exp(x).mean())
            curve.append(update, objective, mean_final, agent.initial_alpha)
            logger.debug(f'update {update}: objective {objective:.5f}, '
                         f'alpha(R_0) {agent.initial_alpha:.4f}')
    logger.info(f'trained {agent}')
    return agent, curve


def evaluate_wealth_agent(agent: WealthFractionAgent, params: CoinTossParams,
                          horizon: int, n_trajectories: int, seed: int,
                          mode: EVALUATION_MODE = 'fixed'
                          ) -> List[TrajectoryRecord]:
    """
    Roll out a trained agent on the coin toss.

    In fixed mode the fraction is frozen at its value for R = R_0, which
    reproduces a fixed-fraction rollout of the process draw for draw. In
    recursive mode it is recomputed from the current return every step.
    Trajectory i draws its uniforms from RngStream(seed, i).
    """
    if mode not in EVALUATION_MODES:
        raise ValueError(f'mode must be in {EVALUATION_MODES}, got {mode}')
    check_positive_count(horizon, 'horizon')
    check_positive_count(n_trajectories, 'n_trajectories')
    uniforms = stack([RngStream(seed, i).generator().random(horizon)
                      for i in range(n_trajectories)])
    process = CoinTossProcess(params)
    if mode == 'fixed':
        returns = process.simulate(
            zeros(uniforms.shape) + agent.initial_alpha, uniforms
        )
    else:
        returns = empty(uniforms.shape)
        R = zeros(n_trajectories) + params.initial_return
        for t in range(horizon):
            alpha = agent.alpha(log(R / params.initial_return))
            R = R * process.factors(alpha, uniforms[:, t])
            returns[:, t] = R
    return [
        TrajectoryRecord.from_returns(
            seed=seed, stream_id=i,
            states=zeros(horizon, dtype=int64),
            actions=zeros(horizon, dtype=int64),
            returns=returns[i], initial_return=params.initial_return
        )
        for i in range(n_trajectories)
    ]
