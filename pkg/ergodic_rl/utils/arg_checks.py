from typing import Iterable

from numpy import ndarray, asarray, all as np_all, isfinite, abs as np_abs

from ergodic_rl.settings import STOCHASTIC_TOLERANCE


def check_probability(value: float, name: str = 'probability'):

    if not 0 <= value <= 1:
        raise ValueError(f'{name} must be in [0, 1], got {value}')


def check_fraction(value: float, name: str = 'fraction'):

    check_probability(value, name)


def check_positive_count(value: int, name: str):

    if int(value) != value or value < 1:
        raise ValueError(f'{name} must be a positive integer, got {value}')


def check_probability_vector(vector: Iterable[float],
                             name: str = 'distribution',
                             tolerance: float = STOCHASTIC_TOLERANCE):
    """
    Raise a ValueError unless the vector is a valid probability distribution.
    """
    vector = asarray(vector, dtype=float)
    if not np_all(isfinite(vector)):
        raise ValueError(f'{name} must be finite')
    if (vector < 0).any() or (vector > 1).any():
        raise ValueError(f'{name} entries must be in [0, 1]')
    if abs(vector.sum() - 1) > tolerance:
        raise ValueError(
            f'{name} must sum to 1 within {tolerance}, sums to {vector.sum()}'
        )


def check_stochastic_rows(matrix: ndarray,
                          name: str = 'kernel',
                          tolerance: float = STOCHASTIC_TOLERANCE):
    """
    Raise a ValueError unless every row along the last axis is a probability
    distribution.
    """
    matrix = asarray(matrix, dtype=float)
    if not np_all(isfinite(matrix)):
        raise ValueError(f'{name} must be finite')
    if (matrix < 0).any() or (matrix > 1).any():
        raise ValueError(f'{name} entries must be in [0, 1]')
    row_errors = np_abs(matrix.sum(axis=-1) - 1)
    if (row_errors > tolerance).any():
        raise ValueError(
            f'{name} rows must sum to 1 within {tolerance}, '
            f'worst row is off by {row_errors.max()}'
        )
