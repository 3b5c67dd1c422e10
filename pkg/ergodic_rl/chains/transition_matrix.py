from dataclasses import dataclass

from numpy import ndarray, asarray

from ergodic_rl.exceptions import ShapeError
from ergodic_rl.utils.arg_checks import check_stochastic_rows


@dataclass(frozen=True, eq=False)
class TransitionMatrix(object):
    """
    Row-stochastic matrix of a finite Markov chain.
    """
    rows: ndarray

    def __post_init__(self):

        rows = asarray(self.rows, dtype=float).copy()
        if rows.ndim != 2 or rows.shape[0] != rows.shape[1]:
            raise ShapeError(f'transition matrix must be square, '
                             f'got shape {rows.shape}')
        check_stochastic_rows(rows, 'transition matrix')
        rows.setflags(write=False)
        object.__setattr__(self, 'rows', rows)

    @property
    def n(self) -> int:

        return self.rows.shape[0]

    @property
    def support(self) -> ndarray:
        """
        Return the boolean adjacency matrix with an edge where P(s, s') > 0.
        """
        return self.rows > 0

    def permute(self, order) -> 'TransitionMatrix':
        """
        Return the matrix with states relabelled so that new state i is old
        state order[i].
        """
        order = asarray(order)
        return TransitionMatrix(self.rows[order][:, order])


def as_transition_matrix(matrix) -> TransitionMatrix:

    if isinstance(matrix, TransitionMatrix):
        return matrix
    return TransitionMatrix(asarray(matrix, dtype=float))
