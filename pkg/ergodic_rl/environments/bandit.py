from dataclasses import dataclass
from math import log
from typing import Tuple, Optional, Union

from numpy import ndarray, asarray, where, cumprod

from ergodic_rl.literals import BANDIT_ACTION, BANDIT_OUTCOME
from ergodic_rl.process.rng_stream import RandomSource, as_generator
from ergodic_rl.process.wealth_process import WealthProcess
from ergodic_rl.utils.arg_checks import check_probability

SAFE = 0
RISK = 1
BANDIT_ACTIONS = ('safe', 'risk')


@dataclass(frozen=True)
class BanditParams(object):
    """
    Factors of the two-action multiplicative bandit. The safe action scales
    the return by r_safe; the risky one by r_loss with probability p_loss and
    by r_win otherwise.
    """
    r_safe: float = 1.0
    r_win: float = 1.5
    r_loss: float = 0.6
    p_loss: float = 0.5

    def __post_init__(self):

        if not self.r_loss < 1 <= self.r_safe <= self.r_win:
            raise ValueError(
                f'factors must satisfy r_loss < 1 <= r_safe <= r_win, got '
                f'r_loss={self.r_loss}, r_safe={self.r_safe}, '
                f'r_win={self.r_win}'
            )
        if self.r_loss <= 0:
            raise ValueError(f'r_loss must be positive, got {self.r_loss}')
        check_probability(self.p_loss, 'p_loss')

    def with_p_loss(self, p_loss: float) -> 'BanditParams':

        return BanditParams(r_safe=self.r_safe, r_win=self.r_win,
                            r_loss=self.r_loss, p_loss=p_loss)

    def expected_factor(self, action: int) -> float:

        if action == SAFE:
            return self.r_safe
        return self.p_loss * self.r_loss + (1 - self.p_loss) * self.r_win

    def expected_log_factor(self, action: int) -> float:

        if action == SAFE:
            return log(self.r_safe)
        return self.p_loss * log(self.r_loss) + \
            (1 - self.p_loss) * log(self.r_win)


def get_action_index(action: Union[BANDIT_ACTION, int]) -> int:

    if action in (SAFE, RISK):
        return int(action)
    if action not in BANDIT_ACTIONS:
        raise ValueError(f'action must be in {BANDIT_ACTIONS}, got {action}')
    return BANDIT_ACTIONS.index(action)


def bandit_factors(actions: ndarray, uniforms: ndarray,
                   params: BanditParams) -> ndarray:
    """
    Return the realised factor for each action, the risky one losing when
    its uniform falls below p_loss.
    """
    risky = where(asarray(uniforms) < params.p_loss,
                  params.r_loss, params.r_win)
    return where(asarray(actions) == RISK, risky, params.r_safe)


def bandit_step(R_prev: float, action: Union[BANDIT_ACTION, int],
                params: BanditParams,
                rng: RandomSource) -> Tuple[float, BANDIT_OUTCOME]:
    """
    Apply one action and return (R_next, outcome). The safe action draws
    nothing; the risky one draws one uniform.

    :param R_prev: Current return, positive.
    :param action: 'safe', 'risk' or their indices 0 and 1.
    :param params: Bandit factors.
    :param rng: Generator to draw from.
    """
    if R_prev <= 0:
        raise ValueError(f'R_prev must be positive, got {R_prev}')
    if get_action_index(action) == SAFE:
        return params.r_safe * R_prev, 'safe'
    if as_generator(rng).random() < params.p_loss:
        return params.r_loss * R_prev, 'loss'
    return params.r_win * R_prev, 'win'


def indifference_expected(params: BanditParams) -> float:
    """
    Return p_E, the loss probability at which both actions have the same
    expected one-step factor.
    """
    return (params.r_win - params.r_safe) / (params.r_win - params.r_loss)


def indifference_growth(params: BanditParams) -> float:
    """
    Return p_T, the loss probability at which both actions have the same
    expected log factor.
    """
    return log(params.r_win / params.r_safe) / log(params.r_win / params.r_loss)


class MultiplicativeBandit(WealthProcess):
    """
    The bandit as a wealth process. A fraction f puts share f of the return
    on the risky action and the rest on the safe one, so f = 0 and f = 1 are
    the pure actions.
    """
    def __init__(self, params: Optional[BanditParams] = None,
                 initial_return: float = 1.0):

        self.params: BanditParams = params or BanditParams()
        if initial_return <= 0:
            raise ValueError(
                f'initial_return must be positive, got {initial_return}'
            )
        self._initial_return: float = initial_return

    @property
    def initial_return(self) -> float:

        return self._initial_return

    def simulate(self, fractions: ndarray, uniforms: ndarray,
                 initial_returns=None) -> ndarray:

        fractions = asarray(fractions, dtype=float)
        risky = where(asarray(uniforms) < self.params.p_loss,
                      self.params.r_loss, self.params.r_win)
        factors = fractions * risky + (1 - fractions) * self.params.r_safe
        start = (self.initial_return if initial_returns is None
                 else asarray(initial_returns, dtype=float)[..., None])
        return start * cumprod(factors, axis=-1)

    def __repr__(self) -> str:

        return f'MultiplicativeBandit({self.params})'
