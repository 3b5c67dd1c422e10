"""
The coin-toss wealth process: each round a fraction alpha of the current
return is staked, winning win_mult times the stake with probability p_win and
losing loss_mult times the stake otherwise.

Expected returns grow for any alpha > 0 with the default parameters while the
typical trajectory decays for alpha above one half. Treating the wealth as
part of the state does not make the process ergodic: its distribution keeps
spreading and never becomes stationary.
"""
import logging
from dataclasses import dataclass
from math import comb, floor, log
from typing import Tuple, List, Optional

from numpy import ndarray, asarray, where, cumprod, cumsum, arange, \
    log as np_log
from scipy.stats import binom

from ergodic_rl.exceptions import DomainError
from ergodic_rl.process.rng_stream import RandomSource, as_generator
from ergodic_rl.process.wealth_process import WealthProcess
from ergodic_rl.settings import COIN_TOSS_INITIAL_RETURN, \
    COIN_TOSS_WIN_MULT, COIN_TOSS_LOSS_MULT, COIN_TOSS_P_WIN, \
    ADDITIVE_INITIAL_RETURN, ADDITIVE_STAKE
from ergodic_rl.utils.arg_checks import check_fraction

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CoinTossParams(object):

    initial_return: float = COIN_TOSS_INITIAL_RETURN
    win_mult: float = COIN_TOSS_WIN_MULT
    loss_mult: float = COIN_TOSS_LOSS_MULT
    p_win: float = COIN_TOSS_P_WIN

    def __post_init__(self):

        if self.initial_return <= 0:
            raise ValueError(
                f'initial_return must be positive, got {self.initial_return}'
            )
        if not 0 < self.loss_mult < 1:
            raise ValueError(
                f'loss_mult must be in (0, 1), got {self.loss_mult}'
            )
        if self.win_mult <= 0:
            raise ValueError(f'win_mult must be positive, got {self.win_mult}')
        if not 0 < self.p_win <= 1:
            raise ValueError(f'p_win must be in (0, 1], got {self.p_win}')

    def win_factor(self, alpha: float) -> float:

        return 1 + alpha * self.win_mult

    def loss_factor(self, alpha: float) -> float:

        return 1 - alpha * self.loss_mult


def coin_toss_step(R_prev: float, alpha: float, rng: RandomSource,
                   params: Optional[CoinTossParams] = None
                   ) -> Tuple[float, float]:
    """
    Play one round and return (reward, R_next). Uses one uniform draw; the
    round is won when it falls below p_win.

    :param R_prev: Return before the round.
    :param alpha: Fraction of the return staked.
    :param rng: Generator to draw from. An RngStream restarts at its first
                draw on every call.
    :param params: Process parameters, defaults if None.
    """
    params = params or CoinTossParams()
    check_fraction(alpha, 'alpha')
    if R_prev < 0:
        raise ValueError(f'R_prev must be non-negative, got {R_prev}')
    if as_generator(rng).random() < params.p_win:
        reward = alpha * params.win_mult * R_prev
    else:
        reward = -alpha * params.loss_mult * R_prev
    return reward, R_prev + reward


class CoinTossProcess(WealthProcess):
    """
    The multiplicative coin toss as a wealth process.
    """
    def __init__(self, params: Optional[CoinTossParams] = None):

        self.params: CoinTossParams = params or CoinTossParams()

    @property
    def initial_return(self) -> float:

        return self.params.initial_return

    def factors(self, fractions: ndarray, uniforms: ndarray) -> ndarray:
        """
        Return the wealth factor of each round.
        """
        fractions = asarray(fractions, dtype=float)
        return where(
            asarray(uniforms) < self.params.p_win,
            1 + fractions * self.params.win_mult,
            1 - fractions * self.params.loss_mult
        )

    def simulate(self, fractions: ndarray, uniforms: ndarray,
                 initial_returns=None) -> ndarray:

        start = (self.initial_return if initial_returns is None
                 else asarray(initial_returns, dtype=float)[..., None])
        return start * cumprod(self.factors(fractions, uniforms), axis=-1)

    def __repr__(self) -> str:

        return f'CoinTossProcess({self.params})'


class AdditiveCoinToss(WealthProcess):
    """
    Additive control for the coin toss: the stake is a fraction alpha of a
    fixed amount instead of the current return, so increments do not depend
    on the return and time and ensemble averages agree.
    """
    def __init__(self, params: Optional[CoinTossParams] = None,
                 stake: float = ADDITIVE_STAKE):

        self.params: CoinTossParams = params or CoinTossParams(
            initial_return=ADDITIVE_INITIAL_RETURN
        )
        if stake <= 0:
            raise ValueError(f'stake must be positive, got {stake}')
        self.stake: float = stake

    @property
    def initial_return(self) -> float:

        return self.params.initial_return

    @property
    def is_multiplicative(self) -> bool:

        return False

    def simulate(self, fractions: ndarray, uniforms: ndarray,
                 initial_returns=None) -> ndarray:

        fractions = asarray(fractions, dtype=float)
        increments = where(
            asarray(uniforms) < self.params.p_win,
            fractions * self.params.win_mult * self.stake,
            -fractions * self.params.loss_mult * self.stake
        )
        start = (self.initial_return if initial_returns is None
                 else asarray(initial_returns, dtype=float)[..., None])
        return start + cumsum(increments, axis=-1)

    def __repr__(self) -> str:

        return f'AdditiveCoinToss({self.params}, stake={self.stake})'


def coin_toss_expected_return(params: CoinTossParams, alpha: float,
                              T: int) -> float:
    """
    Return E[R_T] = R_0 (1 + alpha (p w - (1 - p) l))^T.
    """
    if T < 0:
        raise ValueError(f'T must be non-negative, got {T}')
    drift = params.p_win * params.win_mult - \
        (1 - params.p_win) * params.loss_mult
    return params.initial_return * (1 + alpha * drift) ** T


def coin_toss_time_growth(alpha: float,
                          params: Optional[CoinTossParams] = None) -> float:
    """
    Return the expected per-round log growth of the return,
    p ln(1 + alpha w) + (1 - p) ln(1 - alpha l).

    :raises DomainError: if a loss would wipe out the return.
    """
    params = params or CoinTossParams()
    loss_factor = params.loss_factor(alpha)
    if loss_factor <= 0:
        raise DomainError(
            f'alpha={alpha} loses the whole return on a lost round'
        )
    growth = params.p_win * log(params.win_factor(alpha))
    if params.p_win < 1:
        growth += (1 - params.p_win) * log(loss_factor)
    return growth


def coin_toss_optimal_fraction(params: CoinTossParams) -> Tuple[float, bool]:
    """
    Return the fraction maximizing the per-round log growth, clipped to
    [0, 1], and whether any fraction gives positive growth.

    Setting the derivative of the log growth to zero gives
    alpha* = (p w - (1 - p) l) / (w l).
    """
    edge = params.p_win * params.win_mult - \
        (1 - params.p_win) * params.loss_mult
    if edge <= 0:
        logger.info('no stake fraction gives positive growth')
        return 0.0, False
    alpha = edge / (params.win_mult * params.loss_mult)
    return min(alpha, 1.0), True


def realization_tree(params: CoinTossParams, alpha: float,
                     depth: int) -> List[List[Tuple[float, float]]]:
    """
    Return the tree of possible returns after each round as one list per
    level, level 0 holding the initial return. Paths with the same number of
    wins reach the same return and are merged; nodes are ordered from most
    to fewest wins.
    """
    if depth < 0:
        raise ValueError(f'depth must be non-negative, got {depth}')
    levels = []
    for level in range(depth + 1):
        nodes = []
        for wins in range(level, -1, -1):
            value = params.initial_return * \
                params.win_factor(alpha) ** wins * \
                params.loss_factor(alpha) ** (level - wins)
            probability = comb(level, wins) * params.p_win ** wins * \
                (1 - params.p_win) ** (level - wins)
            nodes.append((value, probability))
        levels.append(nodes)
    return levels


def most_likely_return(params: CoinTossParams, alpha: float, T: int) -> float:
    """
    Return the return reached with the modal number of wins after T rounds,
    taking the lower mode when there are two.
    """
    if T < 0:
        raise ValueError(f'T must be non-negative, got {T}')
    modal = (T + 1) * params.p_win
    wins = floor(modal)
    if wins == modal and wins > 0:
        wins -= 1
    wins = min(wins, T)
    return params.initial_return * params.win_factor(alpha) ** wins * \
        params.loss_factor(alpha) ** (T - wins)


def growth_probability(params: CoinTossParams, alpha: float, T: int) -> float:
    """
    Return the exact probability that the return after T rounds exceeds the
    initial return.
    """
    if T < 0:
        raise ValueError(f'T must be non-negative, got {T}')
    if params.loss_factor(alpha) <= 0:
        raise DomainError(
            f'alpha={alpha} loses the whole return on a lost round'
        )
    wins = arange(T + 1)
    log_growth = wins * log(params.win_factor(alpha)) + \
        (T - wins) * np_log(params.loss_factor(alpha))
    growing = log_growth > 1e-12
    return float(binom.pmf(wins[growing], T, params.p_win).sum())
