import logging
from collections import deque
from functools import reduce
from math import gcd
from typing import List, FrozenSet, Optional, Union

from numpy import ndarray, asarray, eye, zeros, ones, abs as np_abs, \
    arange, errstate, where
from scipy.linalg import solve
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from ergodic_rl.chains.chain_report import ChainReport
from ergodic_rl.chains.transition_matrix import TransitionMatrix, \
    as_transition_matrix
from ergodic_rl.enums.chain_class import CHAIN_CLASS
from ergodic_rl.exceptions import NonUniqueStationary, ShapeError
from ergodic_rl.process.mdp_spec import MdpSpec
from ergodic_rl.process.policy_spec import PolicySpec
from ergodic_rl.settings import DENSE_SOLVE_MAX_STATES, \
    POWER_ITERATION_TOLERANCE, POWER_ITERATION_MAX_STEPS

logger = logging.getLogger(__name__)

MatrixLike = Union[TransitionMatrix, ndarray]


def induced_chain(mdp: MdpSpec, policy: PolicySpec) -> TransitionMatrix:
    """
    Return the transition matrix of the Markov chain obtained by fixing a
    tabular policy: row s is the sum over a of pi(a|s) * kernel(s, a, .).

    :raises UnsupportedPolicy: for parametric policies.
    """
    probs = policy.action_probabilities(mdp.n_states, mdp.n_actions)
    return TransitionMatrix((probs[:, :, None] * mdp.kernel).sum(axis=1))


def induced_rewards(mdp: MdpSpec, policy: PolicySpec) -> ndarray:
    """
    Return the transition reward table g(s, s') of the induced chain: the
    expected reward paid on a transition s -> s', zero where P(s, s') = 0.
    """
    probs = policy.action_probabilities(mdp.n_states, mdp.n_actions)
    weighted = probs[:, :, None] * mdp.kernel
    chain = weighted.sum(axis=1)
    paid = (weighted * mdp.reward).sum(axis=1)
    with errstate(divide='ignore', invalid='ignore'):
        return where(chain > 0, paid / where(chain > 0, chain, 1), 0.0)


def strongly_connected_components(P: MatrixLike) -> List[FrozenSet[int]]:
    """
    Partition the states into strongly connected components of the support
    graph, ordered by smallest member.
    """
    P = as_transition_matrix(P)
    _, labels = connected_components(
        csr_matrix(P.support), directed=True, connection='strong'
    )
    components = {}
    for state, label in enumerate(labels):
        components.setdefault(label, set()).add(state)
    return sorted((frozenset(c) for c in components.values()), key=min)


def _is_closed(component: FrozenSet[int], support: ndarray) -> bool:

    members = sorted(component)
    outside = ones(support.shape[0], dtype=bool)
    outside[members] = False
    return not support[members][:, outside].any()


def class_period(component: FrozenSet[int], support: ndarray) -> int:
    """
    Return the period of a communicating class as the gcd over its internal
    edges u -> v of depth(u) + 1 - depth(v), with depths from a BFS.
    """
    root = min(component)
    depth = {root: 0}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in support[u].nonzero()[0]:
            v = int(v)
            if v in component and v not in depth:
                depth[v] = depth[u] + 1
                queue.append(v)
    differences = [
        abs(depth[u] + 1 - depth[int(v)])
        for u in component
        for v in support[u].nonzero()[0]
        if int(v) in component
    ]
    return reduce(gcd, differences, 0)


def stationary_distribution(P: MatrixLike) -> ndarray:
    """
    Return the unique stationary distribution pi with pi^T P = pi^T.

    A dense linear solve is used up to DENSE_SOLVE_MAX_STATES states, power
    iteration on the lazy chain (P + I) / 2 above that.

    :raises NonUniqueStationary: if the chain has several recurrent classes.
    """
    P = as_transition_matrix(P)
    sccs = strongly_connected_components(P)
    support = P.support
    n_recurrent = sum(_is_closed(c, support) for c in sccs)
    if n_recurrent != 1:
        raise NonUniqueStationary(
            f'chain has {n_recurrent} recurrent classes; the stationary '
            f'distribution is not unique'
        )
    n = P.n
    if n <= DENSE_SOLVE_MAX_STATES:
        a = P.rows.T - eye(n)
        a[-1, :] = 1.0
        b = zeros(n)
        b[-1] = 1.0
        pi = solve(a, b)
    else:
        pi = _lazy_power_iteration(P.rows)
    pi[np_abs(pi) < 1e-15] = 0.0
    pi = pi.clip(min=0)
    return pi / pi.sum()


def _lazy_power_iteration(rows: ndarray) -> ndarray:

    lazy = 0.5 * (rows + eye(rows.shape[0]))
    x = ones(rows.shape[0]) / rows.shape[0]
    for step in range(POWER_ITERATION_MAX_STEPS):
        x_next = x @ lazy
        if np_abs(x_next - x).sum() < POWER_ITERATION_TOLERANCE:
            logger.debug(f'power iteration converged after {step + 1} steps')
            return x_next
        x = x_next
    logger.warning('power iteration hit the step cap before converging')
    return x


def power_iteration(P: MatrixLike, x0, steps: int) -> ndarray:
    """
    Return the distributions x0, x0 P, ..., x0 P^steps as rows.
    """
    P = as_transition_matrix(P)
    trace = zeros((steps + 1, P.n))
    trace[0] = asarray(x0, dtype=float)
    for step in range(steps):
        trace[step + 1] = trace[step] @ P.rows
    return trace


def stationary_reward_rate(P: MatrixLike, g, pi) -> float:
    """
    Return rho = sum over s, s' of pi(s) P(s, s') g(s, s').

    :raises ShapeError: if g or pi do not match P.
    """
    P = as_transition_matrix(P)
    g = asarray(g, dtype=float)
    pi = asarray(pi, dtype=float)
    if g.shape != (P.n, P.n):
        raise ShapeError(f'reward table shape {g.shape} does not match '
                         f'({P.n}, {P.n})')
    if pi.shape != (P.n,):
        raise ShapeError(f'distribution shape {pi.shape} does not match '
                         f'({P.n},)')
    return float((pi[:, None] * P.rows * g).sum())


def classify_chain(P: MatrixLike, rewards=None,
                   state_names: Optional[List[str]] = None) -> ChainReport:
    """
    Classify a chain as ErgodicChain, UnichainAperiodic, UnichainPeriodic or
    Multichain, and fill the stationary distribution and reward rate where
    they are defined.

    :param P: Transition matrix.
    :param rewards: Optional transition reward table g(s, s').
    :param state_names: Optional names used in the text rendering.
    """
    P = as_transition_matrix(P)
    support = P.support
    sccs = strongly_connected_components(P)
    recurrent = [c for c in sccs if _is_closed(c, support)]
    periods = [class_period(c, support) for c in recurrent]
    transient = frozenset(
        s for c in sccs if c not in recurrent for s in c
    )
    if len(recurrent) > 1:
        classification = CHAIN_CLASS.multichain
    elif len(sccs) == 1 and periods[0] == 1:
        classification = CHAIN_CLASS.ergodic_chain
    elif periods[0] == 1:
        classification = CHAIN_CLASS.unichain_aperiodic
    else:
        classification = CHAIN_CLASS.unichain_periodic
    stationary = None
    rho = None
    if classification.is_unichain:
        stationary = stationary_distribution(P)
        if rewards is not None:
            rho = stationary_reward_rate(P, rewards, stationary)
    logger.debug(f'classified {P.n}-state chain as '
                 f'{classification.get_name()}')
    return ChainReport(
        sccs=sccs,
        recurrent_classes=recurrent,
        transient_states=transient,
        periods=periods,
        classification=classification,
        stationary=stationary,
        rho=rho,
        state_names=state_names
    )


def analyze_policy(mdp: MdpSpec, policy: PolicySpec) -> ChainReport:
    """
    Classify the chain induced by a policy, with its reward rate.
    """
    state_names = (
        list(mdp.state_names) if mdp.state_names is not None else None
    )
    return classify_chain(
        induced_chain(mdp, policy),
        rewards=induced_rewards(mdp, policy),
        state_names=state_names
    )


def deterministic_chain(mdp: MdpSpec, actions) -> ndarray:
    """
    Return the transition rows for one action per state.
    """
    return mdp.kernel[arange(mdp.n_states), asarray(actions)]
