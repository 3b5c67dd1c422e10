from ergodic_rl.learners.fraction_policy import DiscretizedFractionPolicy, \
    fraction_grid
from ergodic_rl.learners.learning_curve import LearningCurve
from ergodic_rl.learners.q_learning import QLearningConfig, \
    tabular_q_learning
from ergodic_rl.learners.reinforce import ReinforceConfig, reinforce_train
from ergodic_rl.learners.value_iteration import value_iteration, \
    evaluate_fraction_policy
