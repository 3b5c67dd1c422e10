import logging
from typing import Optional, Tuple

from numpy import ndarray

from ergodic_rl.enums.reward_channel import REWARD_CHANNEL
from ergodic_rl.exceptions import ProbeFailure
from ergodic_rl.learners.fraction_policy import DiscretizedFractionPolicy
from ergodic_rl.learners.learning_curve import LearningCurve
from ergodic_rl.learners.reinforce import ReinforceConfig, reinforce_train
from ergodic_rl.process.policy_spec import PolicySpec
from ergodic_rl.process.rng_stream import RngStream
from ergodic_rl.process.rollout import rollout
from ergodic_rl.process.trajectory import TrajectoryRecord
from ergodic_rl.process.wealth_process import WealthProcess
from ergodic_rl.settings import PROBE_HORIZON, PROBE_RETRIES
from ergodic_rl.transforms.loess import LoessConfig, loess_fit
from ergodic_rl.transforms.scatter import ScatterSet, build_scatter
from ergodic_rl.transforms.transformation_curve import TransformationCurve, \
    integrate_transformation

logger = logging.getLogger(__name__)


def transform_increments(h: TransformationCurve,
                         traj: TrajectoryRecord) -> ndarray:
    """
    Return h(R_k) - h(R_{k-1}) for every step of a trajectory.
    """
    transformed = h(traj.return_series)
    return transformed[1:] - transformed[:-1]


def learn_transformation(traj: TrajectoryRecord,
                         config: Optional[LoessConfig] = None
                         ) -> TransformationCurve:
    """
    Fit a transformation to one return trajectory: smooth log r^2 against
    the return and integrate exp(-y_hat / 2).
    """
    return integrate_transformation(loess_fit(build_scatter(traj), config))


def collect_probe(env: WealthProcess, probe_policy: PolicySpec, horizon: int,
                  seed: int, max_retries: int) -> TrajectoryRecord:
    """
    Roll out the probe policy until a trajectory keeps every return
    positive. Attempt i uses RngStream(seed, i + 1).

    :raises ProbeFailure: after max_retries failed resamples.
    """
    for attempt in range(max_retries + 1):
        probe = rollout(env, probe_policy, horizon, RngStream(seed, attempt + 1))
        if (probe.returns > 0).all():
            return probe
        logger.info(f'probe attempt {attempt + 1} hit a non-positive return; '
                    f'resampling')
    raise ProbeFailure(
        f'every probe trajectory hit a non-positive return after '
        f'{max_retries} retries'
    )


def learn_and_train(env: WealthProcess,
                    probe_policy: Optional[PolicySpec],
                    config: ReinforceConfig,
                    seed: int,
                    loess_config: Optional[LoessConfig] = None,
                    probe_horizon: int = PROBE_HORIZON,
                    max_retries: int = PROBE_RETRIES
                    ) -> Tuple[ScatterSet, TransformationCurve,
                               DiscretizedFractionPolicy, LearningCurve]:
    """
    Learn a transformation from one probe trajectory, then train a fraction
    policy with REINFORCE on the increments of the transformed return.
    The transformation is fitted once and kept fixed during training.
    Returns the probe scatter, the transformation, the policy and the
    learning curve.

    :param env: The wealth process.
    :param probe_policy: Policy for the probe, staking everything if None.
    :param config: REINFORCE settings.
    :param seed: Training uses stream 0 of this seed, probes streams 1 up.
    :param loess_config: Smoothing settings.
    :param probe_horizon: Steps in the probe trajectory.
    :param max_retries: Resamples allowed when a probe hits ruin.
    """
    probe_policy = probe_policy or PolicySpec.fixed_fraction(1.0)
    probe = collect_probe(env, probe_policy, probe_horizon, seed, max_retries)
    scatter = build_scatter(probe)
    curve = integrate_transformation(loess_fit(scatter, loess_config))
    logger.info(f'fitted transformation on {curve.x_scale} scale over '
                f'[{curve.grid[0]:.4g}, {curve.grid[-1]:.4g}]')
    policy, learning_curve = reinforce_train(
        env, REWARD_CHANNEL.transformed_increments, config, seed,
        transform=curve
    )
    return scatter, curve, policy, learning_curve
