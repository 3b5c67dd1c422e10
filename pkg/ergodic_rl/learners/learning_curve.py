from typing import List, Optional, Sequence

from pandas import DataFrame, read_csv

from ergodic_rl.compound_types import PathLike
from ergodic_rl.exceptions import SchemaError

LEARNING_CURVE_COLUMNS = ['iteration', 'objective', 'mean_final_return',
                          'mean_alpha']


class LearningCurve(object):
    """
    Progress of a learner: one row per logged iteration, with optional extra
    columns after the standard ones.
    """
    def __init__(self, extra_columns: Sequence[str] = ()):

        self._extra_columns: List[str] = list(extra_columns)
        self._rows: List[tuple] = []

    @property
    def columns(self) -> List[str]:

        return LEARNING_CURVE_COLUMNS + self._extra_columns

    def append(self, iteration: int, objective: float,
               mean_final_return: float, mean_alpha: Optional[float] = None,
               **extra: float):
        """
        Add a row. Iterations must be strictly increasing.
        """
        if self._rows and iteration <= self._rows[-1][0]:
            raise ValueError(
                f'iteration {iteration} does not follow {self._rows[-1][0]}'
            )
        if set(extra) != set(self._extra_columns):
            raise ValueError(
                f'extra values must be given for {self._extra_columns}'
            )
        self._rows.append((
            int(iteration), float(objective), float(mean_final_return),
            float('nan') if mean_alpha is None else float(mean_alpha),
            *(float(extra[column]) for column in self._extra_columns)
        ))

    def __len__(self) -> int:

        return len(self._rows)

    def __getitem__(self, item) -> tuple:

        return self._rows[item]

    @property
    def iterations(self) -> List[int]:

        return [row[0] for row in self._rows]

    @property
    def last(self) -> tuple:

        return self._rows[-1]

    def equals(self, other: 'LearningCurve') -> bool:

        return self.to_frame().equals(other.to_frame())

    def to_frame(self) -> DataFrame:

        return DataFrame(self._rows, columns=self.columns)

    def write_csv(self, file_path: PathLike) -> DataFrame:
        """
        Write the curve as CSV with columns
        iteration,objective,mean_final_return,mean_alpha and any extras.
        """
        data = self.to_frame()
        data.to_csv(file_path, index=False)
        return data

    @staticmethod
    def read_csv(file_path: PathLike) -> 'LearningCurve':

        data = read_csv(file_path)
        for column in LEARNING_CURVE_COLUMNS:
            if column not in data.columns:
                raise SchemaError(
                    f'learning curve CSV is missing column {column!r}',
                    column=column
                )
        extra_columns = [c for c in data.columns
                         if c not in LEARNING_CURVE_COLUMNS]
        curve = LearningCurve(extra_columns)
        for row in data[curve.columns].itertuples(index=False):
            curve.append(*row[:4], **dict(zip(extra_columns, row[4:])))
        return curve
