import logging
from itertools import product

from ergodic_rl.chains.chain_analysis import deterministic_chain, \
    strongly_connected_components
from ergodic_rl.enums.mdp_ergodicity import MDP_ERGODICITY
from ergodic_rl.process.mdp_spec import MdpSpec
from ergodic_rl.settings import ERGODIC_MDP_POLICY_CAP
from ergodic_rl.utils.arg_checks import check_positive_count

logger = logging.getLogger(__name__)


def is_ergodic_mdp(mdp: MdpSpec,
                   max_policies: int = ERGODIC_MDP_POLICY_CAP
                   ) -> MDP_ERGODICITY:
    """
    Test whether every deterministic stationary policy induces a chain that
    consists of a single recurrent class covering every state.

    Policies are enumerated in lexicographic order of their action tables.

    :param mdp: The MDP to test.
    :param max_policies: Number of policies to check before giving up.
    :return: ergodic, non_ergodic on the first counterexample, or
             inconclusive if the cap is reached first.
    """
    check_positive_count(max_policies, 'max_policies')
    n_policies = mdp.n_actions ** mdp.n_states
    for index, actions in enumerate(
            product(range(mdp.n_actions), repeat=mdp.n_states)
    ):
        if index == max_policies:
            logger.warning(
                f'checked {max_policies} of {n_policies} policies without a '
                f'counterexample; result is inconclusive'
            )
            return MDP_ERGODICITY.inconclusive
        sccs = strongly_connected_components(deterministic_chain(mdp, actions))
        logger.debug(f'policy {actions}: {len(sccs)} components')
        if len(sccs) != 1:
            logger.info(f'policy {list(actions)} is a counterexample')
            return MDP_ERGODICITY.non_ergodic
    return MDP_ERGODICITY.ergodic
