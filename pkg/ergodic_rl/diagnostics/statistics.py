from math import fsum, sqrt
from typing import Tuple

from numpy import asarray, array_split
from scipy.stats import norm

from ergodic_rl.compound_types import FloatArrayLike
from ergodic_rl.exceptions import EmptyInput
from ergodic_rl.settings import CONFIDENCE_LEVEL, TIME_AVERAGE_BATCHES


def normal_quantile(level: float = CONFIDENCE_LEVEL) -> float:
    """
    Return the two-sided normal quantile for a confidence level e.g. 1.96 for
    0.95.
    """
    if not 0 < level < 1:
        raise ValueError(f'level must be in (0, 1), got {level}')
    return float(norm.ppf(0.5 + level / 2))


def compensated_mean(values: FloatArrayLike) -> float:

    values = asarray(values, dtype=float)
    if values.size == 0:
        raise EmptyInput('cannot average an empty sample')
    return fsum(values.tolist()) / values.size


def mean_ci(values: FloatArrayLike,
            level: float = CONFIDENCE_LEVEL) -> Tuple[float, float]:
    """
    Return the sample mean and the normal-approximation half-width of its
    confidence interval. A single value has half-width 0.

    :raises EmptyInput: if there are no values.
    """
    values = asarray(values, dtype=float)
    mean = compensated_mean(values)
    if values.size < 2:
        return mean, 0.0
    std = float(values.std(ddof=1))
    return mean, normal_quantile(level) * std / sqrt(values.size)


def batch_means_ci(values: FloatArrayLike,
                   n_batches: int = TIME_AVERAGE_BATCHES,
                   level: float = CONFIDENCE_LEVEL) -> Tuple[float, float]:
    """
    Return the mean of a serially correlated series and a confidence
    half-width from the spread of its batch means.

    :param values: The series, in time order.
    :param n_batches: Number of contiguous batches. Reduced to the series
                      length for short series.
    :param level: Confidence level.
    """
    values = asarray(values, dtype=float)
    mean = compensated_mean(values)
    n_batches = min(n_batches, values.size)
    if n_batches < 2:
        return mean, 0.0
    batch_means = [batch.mean() for batch in array_split(values, n_batches)]
    _, half_width = mean_ci(batch_means, level)
    return mean, half_width
