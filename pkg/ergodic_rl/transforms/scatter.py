import logging
from dataclasses import dataclass
from typing import List

from numpy import ndarray, log, isfinite
from pandas import DataFrame

from ergodic_rl.compound_types import ScatterPoint
from ergodic_rl.exceptions import InsufficientData
from ergodic_rl.process.trajectory import TrajectoryRecord
from ergodic_rl.settings import SCATTER_MIN_POINTS, SCATTER_EXCLUSION_WARNING
from ergodic_rl.utils.number_utils import format_as_percent

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ScatterSet(object):
    """
    Pairs of the return before a step and the log squared reward of the step,
    for the steps with a nonzero reward.
    """
    returns: ndarray
    log_sq_rewards: ndarray
    horizon: int
    excluded: int

    @property
    def n_points(self) -> int:

        return self.returns.shape[0]

    @property
    def points(self) -> List[ScatterPoint]:

        return list(zip(self.returns.tolist(), self.log_sq_rewards.tolist()))

    def to_frame(self) -> DataFrame:

        return DataFrame({'R': self.returns,
                          'log_sq_reward': self.log_sq_rewards})


def build_scatter(traj: TrajectoryRecord,
                  min_points: int = SCATTER_MIN_POINTS) -> ScatterSet:
    """
    Pair each pre-step return R_{k-1} with log(r_k^2), skipping zero rewards.

    :raises InsufficientData: if fewer than min_points steps are usable.
    """
    if traj.horizon < min_points:
        raise InsufficientData(
            f'need a horizon of at least {min_points}, got {traj.horizon}'
        )
    pre_step = traj.return_series[:-1]
    usable = (traj.rewards != 0) & isfinite(traj.rewards) & isfinite(pre_step)
    n_usable = int(usable.sum())
    if n_usable < min_points:
        raise InsufficientData(
            f'only {n_usable} steps have a nonzero reward, need {min_points}'
        )
    excluded = traj.horizon - n_usable
    if excluded > SCATTER_EXCLUSION_WARNING * traj.horizon:
        logger.warning(
            f'{format_as_percent(excluded / traj.horizon)} of steps have a '
            f'zero reward and are left out of the scatter'
        )
    return ScatterSet(
        returns=pre_step[usable],
        log_sq_rewards=log(traj.rewards[usable] ** 2),
        horizon=traj.horizon,
        excluded=excluded
    )
