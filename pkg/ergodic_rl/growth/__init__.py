from ergodic_rl.growth.growth_q import GrowthQConfig, regularized_backup, \
    multi_step_growth_q
from ergodic_rl.growth.window_buffer import WindowBuffer, \
    geometric_mean_window
