from enum import Enum
from typing import Union


class POLICY_KIND(Enum):

    deterministic_tabular = 1
    stochastic_tabular = 2
    parametric_fraction = 3

    def get_name(self) -> str:

        return {
            'deterministic_tabular': 'DeterministicTabular',
            'stochastic_tabular': 'StochasticTabular',
            'parametric_fraction': 'ParametricFraction',
        }[self.name]

    @property
    def is_tabular(self) -> bool:

        return self is not POLICY_KIND.parametric_fraction

    @staticmethod
    def get_policy_kind(kind: Union[str, 'POLICY_KIND']) -> 'POLICY_KIND':

        if isinstance(kind, POLICY_KIND):
            return kind
        for member in POLICY_KIND:
            if kind in (member.name, member.get_name()):
                return member
        raise ValueError(
            f'kind must be in {[m.get_name() for m in POLICY_KIND]}'
        )
