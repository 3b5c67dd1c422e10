from enum import Enum
from typing import Union


class REWARD_CHANNEL(Enum):

    raw_rewards = 1
    transformed_increments = 2

    @staticmethod
    def get_reward_channel(
            channel: Union[str, 'REWARD_CHANNEL']
    ) -> 'REWARD_CHANNEL':

        if isinstance(channel, REWARD_CHANNEL):
            return channel
        try:
            return REWARD_CHANNEL[channel]
        except KeyError:
            raise ValueError(
                f'reward_channel must be in '
                f'{[m.name for m in REWARD_CHANNEL]}'
            )
