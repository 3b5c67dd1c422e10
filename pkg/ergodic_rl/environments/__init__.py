from ergodic_rl.environments.bandit import BanditParams, bandit_step, \
    indifference_expected, indifference_growth, MultiplicativeBandit
from ergodic_rl.environments.coin_toss import CoinTossParams, \
    CoinTossProcess, AdditiveCoinToss, coin_toss_step, \
    coin_toss_expected_return, coin_toss_time_growth, \
    coin_toss_optimal_fraction, realization_tree, most_likely_return, \
    growth_probability
from ergodic_rl.environments.delivery import DeliveryParams, delivery_mdp, \
    town_city_delivery_mdp
