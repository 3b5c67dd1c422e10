import logging
from typing import Tuple

from numpy import ndarray, zeros, ones, abs as np_abs, array

from ergodic_rl.diagnostics.ergodicity import ensemble_final_returns
from ergodic_rl.process.mdp_spec import MdpSpec
from ergodic_rl.process.policy_spec import PolicySpec
from ergodic_rl.process.rollout import Process
from ergodic_rl.utils.number_utils import log_ratio

logger = logging.getLogger(__name__)


def value_iteration(mdp: MdpSpec, discount: float,
                    tolerance: float = 1e-10,
                    max_iterations: int = 10 ** 6
                    ) -> Tuple[ndarray, PolicySpec]:
    """
    Return the optimal discounted action values and the greedy policy.
    Ruin states are terminal and worth nothing.

    :param mdp: A finite MDP.
    :param discount: Discount factor in [0, 1).
    :param tolerance: Stop when no value changes by more than this.
    :param max_iterations: Iteration cap.
    """
    if not 0 <= discount < 1:
        raise ValueError(f'discount must be in [0, 1), got {discount}')
    expected_reward = (mdp.kernel * mdp.reward).sum(axis=2)
    continuing = ones(mdp.n_states)
    continuing[list(mdp.ruin_states)] = 0.0
    q = zeros((mdp.n_states, mdp.n_actions))
    for iteration in range(max_iterations):
        values = q.max(axis=1) * continuing
        q_next = expected_reward + discount * mdp.kernel @ values
        q_next[list(mdp.ruin_states)] = 0.0
        if np_abs(q_next - q).max() <= tolerance:
            q = q_next
            logger.debug(f'value iteration converged in {iteration + 1} '
                         f'iterations')
            break
        q = q_next
    else:
        logger.warning('value iteration hit the iteration cap')
    return q, PolicySpec.deterministic(q.argmax(axis=1))


def evaluate_fraction_policy(process: Process, policy, horizon: int, n: int,
                             seed: int) -> ndarray:
    """
    Return the per-step log growth ln(R_T / R_0) / T of each of n
    trajectories, -inf for trajectories ending at or below zero.
    """
    finals = ensemble_final_returns(process, policy, horizon, n, seed)
    initial = array([process.initial_return] * n)
    return log_ratio(finals, initial) / horizon
