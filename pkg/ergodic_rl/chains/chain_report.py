from dataclasses import dataclass, field
from typing import List, FrozenSet, Optional, Dict, Any

from numpy import ndarray

from ergodic_rl.enums.chain_class import CHAIN_CLASS


@dataclass(frozen=True, eq=False)
class ChainReport(object):
    """
    Ergodicity classification of a finite Markov chain.

    periods are aligned with recurrent_classes. stationary is present iff the
    chain is a unichain; rho is present iff the chain is a unichain and
    rewards were supplied.
    """
    sccs: List[FrozenSet[int]]
    recurrent_classes: List[FrozenSet[int]]
    transient_states: FrozenSet[int]
    periods: List[int]
    classification: CHAIN_CLASS
    stationary: Optional[ndarray] = None
    rho: Optional[float] = None
    state_names: Optional[List[str]] = field(default=None)

    # region properties

    @property
    def n_states(self) -> int:

        return sum(len(scc) for scc in self.sccs)

    @property
    def is_unichain(self) -> bool:

        return self.classification.is_unichain

    @property
    def is_periodic(self) -> bool:

        return any(period > 1 for period in self.periods)

    @property
    def absorbing_states(self) -> List[int]:
        """
        Return states that form a recurrent class on their own.
        """
        return sorted(
            next(iter(c)) for c in self.recurrent_classes if len(c) == 1
        )

    # endregion

    def _name(self, state: int) -> str:

        if self.state_names is None:
            return f's{state}'
        return self.state_names[state]

    def _names(self, states) -> str:

        return '{' + ', '.join(self._name(s) for s in sorted(states)) + '}'

    def to_dict(self) -> Dict[str, Any]:

        data = {
            'classification': self.classification.get_name(),
            'sccs': [sorted(scc) for scc in self.sccs],
            'recurrent_classes': [sorted(c) for c in self.recurrent_classes],
            'periods': list(self.periods),
            'transient_states': sorted(self.transient_states),
            'absorbing_states': self.absorbing_states,
        }
        if self.stationary is not None:
            data['stationary'] = [float(p) for p in self.stationary]
        if self.rho is not None:
            data['rho'] = float(self.rho)
        return data

    def to_text(self) -> str:
        """
        Return a human-readable rendering of the report.
        """
        lines = [f'classification: {self.classification.get_name()}']
        lines.append('strongly connected components: ' + ', '.join(
            self._names(scc) for scc in self.sccs
        ))
        for recurrent, period in zip(self.recurrent_classes, self.periods):
            lines.append(
                f'recurrent class {self._names(recurrent)}: period {period}'
            )
        if self.transient_states:
            lines.append(
                f'transient states: {self._names(self.transient_states)}'
            )
        absorbing = self.absorbing_states
        if absorbing:
            lines.append('absorbing states: ' + ', '.join(
                self._name(s) for s in absorbing
            ))
        if self.stationary is not None:
            lines.append('stationary distribution: ' + ', '.join(
                f'{self._name(s)}={p:.6g}'
                for s, p in enumerate(self.stationary)
            ))
        else:
            lines.append('stationary distribution: not unique')
        if self.rho is not None:
            lines.append(f'stationary reward rate rho: {self.rho:.6g}')
        if self.is_periodic:
            lines.append(
                'note: a nonzero self-loop probability in a periodic class '
                'would make it aperiodic'
            )
        return '\n'.join(lines)
