from ergodic_rl.diagnostics.ergodicity import ensemble_average_at, \
    time_average, time_average_ci, ergodicity_gap, ensemble_final_returns, \
    positive_growth_fraction, non_ergodicity_score
from ergodic_rl.diagnostics.gap_report import ErgodicityGapReport
from ergodic_rl.diagnostics.growth import GrowthEstimate, growth_rate_estimate
from ergodic_rl.diagnostics.statistics import mean_ci, batch_means_ci
