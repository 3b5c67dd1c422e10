from enum import Enum
from typing import Union


class UPDATE_RULE(Enum):

    one_step_expected = 1
    temporal_compounded = 2
    monte_carlo_trajectory = 3

    @staticmethod
    def get_update_rule(rule: Union[str, 'UPDATE_RULE']) -> 'UPDATE_RULE':

        if isinstance(rule, UPDATE_RULE):
            return rule
        try:
            return UPDATE_RULE[rule]
        except KeyError:
            raise ValueError(
                f'update_rule must be in {[m.name for m in UPDATE_RULE]}'
            )
