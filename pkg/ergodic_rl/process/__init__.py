from ergodic_rl.process.mdp_spec import MdpSpec
from ergodic_rl.process.policy_spec import PolicySpec
from ergodic_rl.process.rng_stream import RngStream
from ergodic_rl.process.rollout import sample_transition, rollout, \
    ensemble_rollout
from ergodic_rl.process.trajectory import TrajectoryRecord
from ergodic_rl.process.wealth_process import WealthProcess
