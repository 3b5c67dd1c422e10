from bisect import bisect_right
from typing import List, Tuple, Union

from numpy import empty, int64

from ergodic_rl.enums.policy_kind import POLICY_KIND
from ergodic_rl.process.mdp_spec import MdpSpec
from ergodic_rl.process.policy_spec import PolicySpec
from ergodic_rl.process.rng_stream import RngStream, RandomSource, \
    as_generator
from ergodic_rl.process.trajectory import TrajectoryRecord
from ergodic_rl.process.wealth_process import WealthProcess
from ergodic_rl.utils.arg_checks import check_positive_count

Process = Union[MdpSpec, WealthProcess]


def _draw(cumulative_row, u: float) -> int:

    return min(bisect_right(cumulative_row, u), len(cumulative_row) - 1)


def sample_transition(mdp: MdpSpec, state: int, action: int,
                      rng: RandomSource) -> Tuple[int, float]:
    """
    Sample the next state from the kernel row of (state, action) using one
    uniform draw, and return it with the transition reward.
    """
    mdp.check_indices(state, action)
    u = as_generator(rng).random()
    next_state = _draw(mdp.cumulative_kernel[state, action].tolist(), u)
    return next_state, float(mdp.reward[state, action, next_state])


def _rollout_mdp(mdp: MdpSpec, policy: PolicySpec, horizon: int,
                 rng: RngStream) -> TrajectoryRecord:

    policy.require_tabular()
    probs = policy.action_probabilities(mdp.n_states, mdp.n_actions)
    stochastic = policy.kind is POLICY_KIND.stochastic_tabular
    cum_policy = probs.cumsum(axis=1).tolist()
    deterministic = policy.table.tolist() if not stochastic else None
    cum_kernel = mdp.cumulative_kernel.tolist()
    reward = mdp.reward.tolist()
    # initial state, then per step an optional action draw and a transition
    uniforms = rng.generator().random(
        1 + horizon * (2 if stochastic else 1)
    ).tolist()
    states = empty(horizon, dtype=int64)
    actions = empty(horizon, dtype=int64)
    rewards = empty(horizon)
    returns = empty(horizon)
    state = _draw(mdp.initial_dist.cumsum().tolist(), uniforms[0])
    total = mdp.initial_return
    position = 1
    for step in range(horizon):
        if stochastic:
            action = _draw(cum_policy[state], uniforms[position])
            position += 1
        else:
            action = deterministic[state]
        next_state = _draw(cum_kernel[state][action], uniforms[position])
        position += 1
        r = reward[state][action][next_state]
        total += r
        states[step] = state
        actions[step] = action
        rewards[step] = r
        returns[step] = total
        state = next_state
    return TrajectoryRecord(
        seed=rng.seed, stream_id=rng.stream_id,
        states=states, actions=actions,
        rewards=rewards, returns=returns,
        initial_return=mdp.initial_return
    )


def rollout(process: Process, policy, horizon: int,
            rng: RngStream) -> TrajectoryRecord:
    """
    Roll out a policy for a number of steps from an initial state drawn from
    the process's initial distribution.

    :param process: A finite MdpSpec or a WealthProcess.
    :param policy: PolicySpec, or any fraction policy for wealth processes.
    :param horizon: Number of steps T >= 1.
    :param rng: The stream the trajectory draws from.
    """
    check_positive_count(horizon, 'horizon')
    if isinstance(process, WealthProcess):
        return process.rollout(policy, horizon, rng)
    return _rollout_mdp(process, policy, horizon, rng)


def ensemble_rollout(process: Process, policy, horizon: int,
                     n_trajectories: int,
                     base_seed: int) -> List[TrajectoryRecord]:
    """
    Roll out n independent trajectories; trajectory i uses
    RngStream(base_seed, i).
    """
    check_positive_count(n_trajectories, 'n_trajectories')
    base = RngStream(base_seed)
    return [
        rollout(process, policy, horizon, base.child(i))
        for i in range(n_trajectories)
    ]
