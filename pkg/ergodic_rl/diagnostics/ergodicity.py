import logging
from math import fsum
from typing import List, Tuple, Optional, Sequence

from numpy import ndarray, array, asarray, empty, log, median, unique

from ergodic_rl.diagnostics.gap_report import ErgodicityGapReport
from ergodic_rl.diagnostics.statistics import mean_ci, batch_means_ci
from ergodic_rl.exceptions import EmptyInput, DomainError
from ergodic_rl.process.mdp_spec import MdpSpec
from ergodic_rl.process.rng_stream import RngStream
from ergodic_rl.process.rollout import Process, rollout, ensemble_rollout
from ergodic_rl.process.trajectory import TrajectoryRecord
from ergodic_rl.process.wealth_process import WealthProcess
from ergodic_rl.settings import BURN_IN_FACTOR, TIME_AVERAGE_BATCHES
from ergodic_rl.utils.arg_checks import check_positive_count
from ergodic_rl.utils.number_utils import log_ratio

logger = logging.getLogger(__name__)


def ensemble_average_at(trajs: Sequence[TrajectoryRecord],
                        t: int) -> Tuple[float, float]:
    """
    Return the mean over trajectories of the reward at step t, with its 95%
    normal-approximation half-width.

    :raises EmptyInput: if there are no trajectories.
    """
    if len(trajs) == 0:
        raise EmptyInput('cannot average over an empty ensemble')
    short = [traj.horizon for traj in trajs if traj.horizon <= t]
    if short:
        raise ValueError(
            f'step {t} is beyond a trajectory of horizon {min(short)}'
        )
    return mean_ci([traj.rewards[t] for traj in trajs])


def time_average(traj: TrajectoryRecord) -> float:
    """
    Return the mean reward over the steps of a trajectory.
    """
    return fsum(traj.rewards.tolist()) / traj.horizon


def time_average_ci(traj: TrajectoryRecord,
                    n_batches: int = TIME_AVERAGE_BATCHES) -> float:
    """
    Return the batch-means 95% half-width of a trajectory's time average.
    """
    return batch_means_ci(traj.rewards, n_batches)[1]


def default_burn_in(process: Process) -> int:

    if isinstance(process, MdpSpec):
        return BURN_IN_FACTOR * process.n_states
    return BURN_IN_FACTOR


def ergodicity_gap(process: Process, policy, horizon: int, n: int,
                   probe_times: Sequence[int], seed: int,
                   burn_in: Optional[int] = None) -> ErgodicityGapReport:
    """
    Roll out an ensemble and compare the ensemble average of the reward at
    each probe time with the time averages along trajectories.

    :param process: A finite MDP or a wealth process.
    :param policy: The policy to roll out.
    :param horizon: Steps per trajectory.
    :param n: Number of trajectories.
    :param probe_times: Steps at which to take ensemble averages, each in
                        [0, horizon).
    :param seed: Base seed; trajectory i uses stream i.
    :param burn_in: First probe time counted for the asymptotic gap.
                    Defaults to 10 times the number of states.
    """
    check_positive_count(horizon, 'horizon')
    check_positive_count(n, 'n')
    probe_times = unique(asarray(probe_times, dtype=int))
    if probe_times.size == 0:
        raise EmptyInput('probe_times must not be empty')
    if probe_times[0] < 0 or probe_times[-1] >= horizon:
        raise ValueError(
            f'probe times must be in [0, {horizon}), got {probe_times.tolist()}'
        )
    if burn_in is None:
        burn_in = default_burn_in(process)
    trajs = ensemble_rollout(process, policy, horizon, n, seed)
    probe_set = sorted(set(probe_times.tolist()) | {0})
    ensemble = {t: ensemble_average_at(trajs, t) for t in probe_set}
    time_means = array([time_average(traj) for traj in trajs])
    time_cis = array([time_average_ci(traj) for traj in trajs])
    time_mean, time_ci = mean_ci(time_means)

    def gap_at(t: int) -> Tuple[float, float]:
        mean, ci = ensemble[t]
        return abs(time_mean - mean), ci + time_ci

    strict_gap, strict_ci = gap_at(0)
    gap, ci_halfwidth = gap_at(int(probe_times[-1]))
    late = probe_times[probe_times >= burn_in]
    asymptotic_gap, asymptotic_ci = (
        gap_at(int(late[-1])) if late.size else (None, None)
    )
    if late.size == 0:
        logger.info(f'no probe time at or after burn-in {burn_in}')
    return ErgodicityGapReport(
        probe_times=probe_times,
        ensemble_mean_at=array([ensemble[t][0] for t in probe_times]),
        ensemble_ci=array([ensemble[t][1] for t in probe_times]),
        time_mean_per_traj=time_means,
        time_ci_per_traj=time_cis,
        time_mean=time_mean,
        time_ci=time_ci,
        n_trajectories=n,
        horizon=horizon,
        burn_in=burn_in,
        strict_gap=strict_gap,
        strict_ci=strict_ci,
        asymptotic_gap=asymptotic_gap,
        asymptotic_ci=asymptotic_ci,
        gap=gap,
        ci_halfwidth=ci_halfwidth
    )


def ensemble_final_returns(process: Process, policy, horizon: int, n: int,
                           base_seed: int) -> ndarray:
    """
    Return the final return of each of n trajectories without storing them.
    Value i equals ensemble_rollout(...)[i].final_return.
    """
    check_positive_count(horizon, 'horizon')
    check_positive_count(n, 'n')
    if isinstance(process, WealthProcess):
        return process.final_returns(policy, horizon, n, base_seed)
    base = RngStream(base_seed)
    finals = empty(n)
    for i in range(n):
        finals[i] = rollout(process, policy, horizon, base.child(i)).final_return
    return finals


def positive_growth_fraction(final_returns, initial_return: float) -> float:
    """
    Return the fraction of trajectories that end above their initial return.
    """
    final_returns = asarray(final_returns, dtype=float)
    if final_returns.size == 0:
        raise EmptyInput('no final returns')
    return float((final_returns > initial_return).mean())


def non_ergodicity_score(trajs: List[TrajectoryRecord]) -> float:
    """
    Return the ensemble growth rate ln(mean R_T / R_0) / T minus the median
    time-average growth rate ln(R_T / R_0) / T.

    Close to zero when the typical trajectory keeps up with the ensemble,
    positive when ensemble growth is carried by a few trajectories.

    :raises DomainError: if the initial or mean final return is not positive.
    """
    if len(trajs) == 0:
        raise EmptyInput('cannot score an empty ensemble')
    horizon = trajs[0].horizon
    initial = trajs[0].initial_return
    if any(t.horizon != horizon or t.initial_return != initial for t in trajs):
        raise ValueError('trajectories must share horizon and initial return')
    finals = array([t.final_return for t in trajs])
    mean_final = finals.mean()
    if initial <= 0 or mean_final <= 0:
        raise DomainError('growth rates need positive returns')
    ensemble_rate = float(log(mean_final / initial)) / horizon
    time_rates = log_ratio(finals, array([initial] * len(finals))) / horizon
    return ensemble_rate - float(median(time_rates))
