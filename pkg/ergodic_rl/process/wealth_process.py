from abc import ABC, abstractmethod
from typing import List, Tuple

from numpy import ndarray, zeros, int64, empty
from numpy.random import Generator

from ergodic_rl.process.rng_stream import RngStream
from ergodic_rl.process.trajectory import TrajectoryRecord
from ergodic_rl.utils.arg_checks import check_positive_count


class WealthProcess(ABC):
    """
    A process on a continuous return R driven by a stake fraction chosen at
    every step. Each step consumes one uniform draw.
    """
    initial_return: float

    @abstractmethod
    def simulate(self, fractions: ndarray, uniforms: ndarray,
                 initial_returns=None) -> ndarray:
        """
        Return the return path R_1..R_T along the last axis.

        :param fractions: Stake fraction per step, any leading batch shape.
        :param uniforms: One uniform in [0, 1) per step, same shape.
        :param initial_returns: Starting return per batch entry, or None for
                                the process initial return.
        """
        pass

    @property
    def is_multiplicative(self) -> bool:

        return True

    def draw(self, policy, horizon: int,
             generator: Generator) -> Tuple[ndarray, ndarray, ndarray]:
        """
        Draw (actions, fractions, uniforms) for one trajectory: policy draws
        first, then one uniform per step.
        """
        actions, fractions = policy.sample_fractions(horizon, generator)
        uniforms = generator.random(horizon)
        return actions, fractions, uniforms

    def rollout(self, policy, horizon: int,
                rng: RngStream) -> TrajectoryRecord:

        check_positive_count(horizon, 'horizon')
        actions, fractions, uniforms = self.draw(
            policy, horizon, rng.generator()
        )
        returns = self.simulate(fractions, uniforms)
        return TrajectoryRecord.from_returns(
            seed=rng.seed, stream_id=rng.stream_id,
            states=zeros(horizon, dtype=int64), actions=actions,
            returns=returns, initial_return=self.initial_return
        )

    def ensemble_rollout(self, policy, horizon: int, n_trajectories: int,
                         base_seed: int) -> List[TrajectoryRecord]:

        check_positive_count(n_trajectories, 'n_trajectories')
        base = RngStream(base_seed)
        return [
            self.rollout(policy, horizon, base.child(i))
            for i in range(n_trajectories)
        ]

    def final_returns(self, policy, horizon: int, n_trajectories: int,
                      base_seed: int) -> ndarray:
        """
        Return the final return of each ensemble trajectory without keeping
        the paths. Matches ensemble_rollout draw for draw.
        """
        check_positive_count(horizon, 'horizon')
        check_positive_count(n_trajectories, 'n_trajectories')
        base = RngStream(base_seed)
        finals = empty(n_trajectories)
        for i in range(n_trajectories):
            _, fractions, uniforms = self.draw(
                policy, horizon, base.child(i).generator()
            )
            finals[i] = self.simulate(fractions, uniforms)[-1]
        return finals
