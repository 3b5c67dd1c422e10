from ergodic_rl.chains.chain_analysis import induced_chain, \
    induced_rewards, strongly_connected_components, classify_chain, \
    stationary_distribution, stationary_reward_rate, power_iteration, \
    analyze_policy
from ergodic_rl.chains.chain_report import ChainReport
from ergodic_rl.chains.dot_export import condensation_dot
from ergodic_rl.chains.ergodic_mdp import is_ergodic_mdp
from ergodic_rl.chains.transition_matrix import TransitionMatrix
