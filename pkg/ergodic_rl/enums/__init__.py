from ergodic_rl.enums.chain_class import CHAIN_CLASS
from ergodic_rl.enums.mdp_ergodicity import MDP_ERGODICITY
from ergodic_rl.enums.policy_kind import POLICY_KIND
from ergodic_rl.enums.reward_channel import REWARD_CHANNEL
from ergodic_rl.enums.update_rule import UPDATE_RULE
