from enum import Enum
from typing import Union


class CHAIN_CLASS(Enum):

    ergodic_chain = 1
    unichain_aperiodic = 2
    unichain_periodic = 3
    multichain = 4

    def get_name(self) -> str:

        return {
            'ergodic_chain': 'ErgodicChain',
            'unichain_aperiodic': 'UnichainAperiodic',
            'unichain_periodic': 'UnichainPeriodic',
            'multichain': 'Multichain',
        }[self.name]

    @property
    def is_unichain(self) -> bool:

        return self is not CHAIN_CLASS.multichain

    @staticmethod
    def get_chain_class(
            chain_class: Union[str, 'CHAIN_CLASS']
    ) -> 'CHAIN_CLASS':
        """
        Return the CHAIN_CLASS for a member or a printed name such as
        'UnichainPeriodic'.
        """
        if isinstance(chain_class, CHAIN_CLASS):
            return chain_class
        for member in CHAIN_CLASS:
            if chain_class in (member.name, member.get_name()):
                return member
        raise ValueError(
            f'chain_class must be in {[m.get_name() for m in CHAIN_CLASS]}'
        )
