# probability bookkeeping
STOCHASTIC_TOLERANCE = 1e-12
STATIONARY_SUM_TOLERANCE = 1e-10
RETURN_RELATIVE_TOLERANCE = 1e-9

# chain analysis
DENSE_SOLVE_MAX_STATES = 2000
POWER_ITERATION_TOLERANCE = 1e-12
POWER_ITERATION_MAX_STEPS = 10 ** 6
ERGODIC_MDP_POLICY_CAP = 10 ** 6

# diagnostics
CONFIDENCE_LEVEL = 0.95
TIME_AVERAGE_BATCHES = 50
BURN_IN_FACTOR = 10

# coin toss
COIN_TOSS_INITIAL_RETURN = 100.0
COIN_TOSS_WIN_MULT = 0.5
COIN_TOSS_LOSS_MULT = 0.4
COIN_TOSS_P_WIN = 0.5
ADDITIVE_INITIAL_RETURN = 10_000.0
ADDITIVE_STAKE = 100.0

# learners
FRACTION_GRID_POINTS = 21
LOG_EVERY = 500

# transformation learning
LOESS_SPAN = 0.3
LOESS_GRID_POINTS = 256
LOESS_LOG_DECADES = 2.0
SCATTER_MIN_POINTS = 10
SCATTER_EXCLUSION_WARNING = 0.2
PROBE_HORIZON = 5000
PROBE_RETRIES = 5

# growth q-learning
RUIN_FLOOR = -10.0

# temporal training
TRAINING_EPSILON = 0.1
INDIFFERENCE_LEVEL = 0.5

# experiments
OUTPUT_ROOT_ENV = 'ERGODIC_RL_OUTPUT_ROOT'
MANIFEST_FILE_NAME = 'manifest.yaml'
PLOT_FILE_TYPE = 'svg'
SVG_HASH_SALT = 'ergodic-rl'
