from dataclasses import dataclass
from typing import Optional

from numpy import zeros

from ergodic_rl.process.mdp_spec import MdpSpec
from ergodic_rl.utils.arg_checks import check_probability, \
    check_positive_count

OPERATIONAL = 0
DESTROYED = 1
DIRECT = 0
SAFE = 1

DEPOT = 0
GO_TOWN = 0
GO_CITY = 1
TOWN = 1
CITY = 2
WAIT = 2


@dataclass(frozen=True)
class DeliveryParams(object):

    delivery_points: float = 100.0
    step_cost: float = 1.0
    direct_steps: int = 10
    safe_steps: int = 20
    destroy_prob: float = 0.01
    reward_floor: float = 0.0

    def __post_init__(self):

        check_positive_count(self.direct_steps, 'direct_steps')
        check_positive_count(self.safe_steps, 'safe_steps')
        check_probability(self.destroy_prob, 'destroy_prob')
        if self.step_cost < 0:
            raise ValueError(
                f'step_cost must be non-negative, got {self.step_cost}'
            )

    def trip_reward(self, steps: int) -> float:
        """
        Return the net reward of a completed trip, floored at reward_floor.
        """
        return max(self.delivery_points - steps * self.step_cost,
                   self.reward_floor)

    @property
    def destroyed_reward(self) -> float:

        return -self.direct_steps * self.step_cost


def delivery_mdp(params: Optional[DeliveryParams] = None) -> MdpSpec:
    """
    Return the trip-level delivery robot MDP.

    From the operational state the direct route completes the trip and
    returns to operational with probability 1 - destroy_prob and otherwise
    destroys the robot, paying back the steps driven. The safe route always
    completes. The destroyed state is absorbing and pays nothing.

    With the defaults the expected direct trip pays 89 and the safe one 80.
    """
    params = params or DeliveryParams()
    kernel = zeros((2, 2, 2))
    reward = zeros((2, 2, 2))
    kernel[OPERATIONAL, DIRECT, OPERATIONAL] = 1 - params.destroy_prob
    kernel[OPERATIONAL, DIRECT, DESTROYED] = params.destroy_prob
    reward[OPERATIONAL, DIRECT, OPERATIONAL] = params.trip_reward(
        params.direct_steps
    )
    reward[OPERATIONAL, DIRECT, DESTROYED] = params.destroyed_reward
    kernel[OPERATIONAL, SAFE, OPERATIONAL] = 1.0
    reward[OPERATIONAL, SAFE, OPERATIONAL] = params.trip_reward(
        params.safe_steps
    )
    kernel[DESTROYED, :, DESTROYED] = 1.0
    return MdpSpec(
        kernel=kernel,
        reward=reward,
        initial_dist=[1.0, 0.0],
        initial_return=params.delivery_points,
        ruin_states=(DESTROYED,),
        state_names=('operational', 'destroyed'),
        action_names=('direct', 'safe')
    )


def town_city_delivery_mdp(params: Optional[DeliveryParams] = None) -> MdpSpec:
    """
    Return a three-state MDP where the robot delivers either in the town or
    in the city. From any state, go_town and go_city move the robot to that
    region and wait keeps it where it is. Every transition into the town
    pays the safe-route reward and every transition into the city the
    direct-route reward.

    Always going to one region gives a unichain, while waiting everywhere
    leaves three closed classes.
    """
    params = params or DeliveryParams()
    kernel = zeros((3, 3, 3))
    reward = zeros((3, 3, 3))
    for state in (DEPOT, TOWN, CITY):
        kernel[state, GO_TOWN, TOWN] = 1.0
        kernel[state, GO_CITY, CITY] = 1.0
        kernel[state, WAIT, state] = 1.0
    reward[:, :, TOWN] = params.trip_reward(params.safe_steps)
    reward[:, :, CITY] = params.trip_reward(params.direct_steps)
    return MdpSpec(
        kernel=kernel,
        reward=reward,
        initial_dist=[1.0, 0.0, 0.0],
        state_names=('depot', 'town', 'city'),
        action_names=('go_town', 'go_city', 'wait')
    )
