from ergodic_rl.temporal.bandit_agent import BanditAgent, BanditAgentConfig, \
    temporal_episode, train_preference, train_population
from ergodic_rl.temporal.preference import PreferenceCurve, \
    preference_sweep, indifference_crossing
from ergodic_rl.temporal.time_indexed import TimeIndexedAgent, \
    monte_carlo_trajectory_update, time_indexed_population
from ergodic_rl.temporal.wealth_agent import WealthAgentConfig, \
    WealthFractionAgent, train_wealth_agent, evaluate_wealth_agent
