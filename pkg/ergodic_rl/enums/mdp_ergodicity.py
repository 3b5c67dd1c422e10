from enum import Enum


class MDP_ERGODICITY(Enum):

    ergodic = 1
    non_ergodic = 2
    inconclusive = 3

    def get_name(self) -> str:

        return {
            'ergodic': 'true',
            'non_ergodic': 'false',
            'inconclusive': 'Inconclusive',
        }[self.name]

    def __bool__(self) -> bool:

        return self is MDP_ERGODICITY.ergodic
