from dataclasses import dataclass
from typing import List, Iterable

from numpy import ndarray, asarray, abs as np_abs, maximum, int64, \
    array_equal, concatenate, diff
from pandas import DataFrame, concat, read_csv

from ergodic_rl.compound_types import PathLike
from ergodic_rl.exceptions import ShapeError, SchemaError
from ergodic_rl.settings import RETURN_RELATIVE_TOLERANCE

TRAJECTORY_COLUMNS = ['seed', 'stream_id', 'step', 'state', 'action',
                      'reward', 'return']


def _frozen(values, dtype) -> ndarray:

    values = asarray(values, dtype=dtype).copy()
    values.setflags(write=False)
    return values


@dataclass(frozen=True, eq=False)
class TrajectoryRecord(object):
    """
    One realization of a process: the state and action at each step, the
    reward paid on the step and the cumulative return after it.
    """
    seed: int
    stream_id: int
    states: ndarray
    actions: ndarray
    rewards: ndarray
    returns: ndarray
    initial_return: float = 0.0

    def __post_init__(self):

        states = _frozen(self.states, int64)
        actions = _frozen(self.actions, int64)
        rewards = _frozen(self.rewards, float)
        returns = _frozen(self.returns, float)
        horizon = rewards.shape[0]
        if horizon < 1:
            raise ShapeError('a trajectory needs at least one step')
        for name, values in (('states', states), ('actions', actions),
                             ('returns', returns)):
            if values.shape != (horizon,):
                raise ShapeError(
                    f'{name} has shape {values.shape}, expected ({horizon},)'
                )
        previous = concatenate([[self.initial_return], returns[:-1]])
        error = np_abs(previous + rewards - returns)
        scale = maximum(1.0, maximum(np_abs(returns), np_abs(previous)))
        if (error > RETURN_RELATIVE_TOLERANCE * scale).any():
            raise ValueError('returns must accumulate rewards step by step')
        object.__setattr__(self, 'states', states)
        object.__setattr__(self, 'actions', actions)
        object.__setattr__(self, 'rewards', rewards)
        object.__setattr__(self, 'returns', returns)
        object.__setattr__(self, 'initial_return', float(self.initial_return))

    # region properties

    @property
    def horizon(self) -> int:

        return self.rewards.shape[0]

    @property
    def final_return(self) -> float:

        return float(self.returns[-1])

    @property
    def return_series(self) -> ndarray:
        """
        Return R_0, R_1, ..., R_T including the initial return.
        """
        return concatenate([[self.initial_return], self.returns])

    # endregion

    def equals(self, other: 'TrajectoryRecord') -> bool:
        """
        Return True if both records hold identical values bit for bit.
        """
        return (
            self.seed == other.seed and
            self.stream_id == other.stream_id and
            self.initial_return == other.initial_return and
            array_equal(self.states, other.states) and
            array_equal(self.actions, other.actions) and
            array_equal(self.rewards, other.rewards) and
            array_equal(self.returns, other.returns)
        )

    def to_frame(self) -> DataFrame:

        return DataFrame({
            'seed': self.seed,
            'stream_id': self.stream_id,
            'step': range(self.horizon),
            'state': self.states,
            'action': self.actions,
            'reward': self.rewards,
            'return': self.returns,
        }, columns=TRAJECTORY_COLUMNS)

    @staticmethod
    def from_returns(seed: int, stream_id: int,
                     states: ndarray, actions: ndarray,
                     returns: ndarray,
                     initial_return: float) -> 'TrajectoryRecord':
        """
        Create a record from a return path, deriving rewards as increments.
        """
        returns = asarray(returns, dtype=float)
        rewards = diff(concatenate([[initial_return], returns]))
        return TrajectoryRecord(
            seed=seed, stream_id=stream_id,
            states=states, actions=actions,
            rewards=rewards, returns=returns,
            initial_return=initial_return
        )


def trajectories_to_frame(records: Iterable[TrajectoryRecord]) -> DataFrame:

    frames = [record.to_frame() for record in records]
    if not frames:
        return DataFrame(columns=TRAJECTORY_COLUMNS)
    return concat(frames, ignore_index=True)


def write_trajectories_csv(records: Iterable[TrajectoryRecord],
                           file_path: PathLike) -> DataFrame:
    """
    Write trajectories to a CSV with columns
    seed,stream_id,step,state,action,reward,return.
    """
    data = trajectories_to_frame(records)
    data.to_csv(file_path, index=False)
    return data


def read_trajectories_csv(file_path: PathLike) -> List[TrajectoryRecord]:
    """
    Read trajectories written by write_trajectories_csv. The initial return
    of each record is recovered as the first return minus the first reward.
    """
    data = read_csv(file_path)
    missing = [c for c in TRAJECTORY_COLUMNS if c not in data.columns]
    if missing:
        raise SchemaError(f'trajectory CSV is missing column {missing[0]!r}',
                          column=missing[0])
    records = []
    for (seed, stream_id), group in data.groupby(['seed', 'stream_id'],
                                                 sort=False):
        group = group.sort_values('step')
        rewards = group['reward'].to_numpy()
        returns = group['return'].to_numpy()
        records.append(TrajectoryRecord(
            seed=int(seed), stream_id=int(stream_id),
            states=group['state'].to_numpy(),
            actions=group['action'].to_numpy(),
            rewards=rewards, returns=returns,
            initial_return=float(returns[0] - rewards[0])
        ))
    return records
