import logging
from dataclasses import dataclass
from math import ceil

from numpy import ndarray, asarray, linspace, log, exp, abs as np_abs, \
    partition, where, median, clip, empty, finfo, argsort

from ergodic_rl.exceptions import InsufficientData
from ergodic_rl.literals import X_SCALE
from ergodic_rl.settings import LOESS_SPAN, LOESS_GRID_POINTS, \
    LOESS_LOG_DECADES
from ergodic_rl.transforms.scatter import ScatterSet

logger = logging.getLogger(__name__)

CHUNK_SIZE = 256


@dataclass(frozen=True)
class LoessConfig(object):
    """
    Settings for local linear smoothing.

    x_scale 'auto' smooths against ln R when every return is positive and the
    returns span more than LOESS_LOG_DECADES decades, against R otherwise.
    """
    span: float = LOESS_SPAN
    degree: int = 1
    grid_points: int = LOESS_GRID_POINTS
    robustness_iterations: int = 0
    x_scale: X_SCALE = 'auto'

    def __post_init__(self):

        if not 0 < self.span <= 1:
            raise ValueError(f'span must be in (0, 1], got {self.span}')
        if self.degree != 1:
            raise ValueError(f'only degree 1 is supported, got {self.degree}')
        if self.grid_points < 2:
            raise ValueError(
                f'grid_points must be at least 2, got {self.grid_points}'
            )
        if self.robustness_iterations < 0:
            raise ValueError('robustness_iterations must be non-negative')
        if self.x_scale not in ('auto', 'linear', 'log'):
            raise ValueError(
                f'x_scale must be in [\'auto\', \'linear\', \'log\'], '
                f'got {self.x_scale}'
            )


@dataclass(frozen=True, eq=False)
class SmoothFit(object):
    """
    Smoothed log squared reward y_hat on a grid of returns. grid_x holds the
    grid in the smoothing coordinate: R, or ln R when x_scale is 'log'.
    """
    grid: ndarray
    grid_x: ndarray
    y_hat: ndarray
    x_scale: X_SCALE


def resolve_x_scale(returns: ndarray, x_scale: X_SCALE) -> X_SCALE:

    if x_scale != 'auto':
        return x_scale
    if (returns > 0).all() and \
            log(returns.max() / returns.min()) > LOESS_LOG_DECADES * log(10):
        return 'log'
    return 'linear'


def to_coordinate(values: ndarray, x_scale: X_SCALE) -> ndarray:

    values = asarray(values, dtype=float)
    if x_scale == 'log':
        return log(clip(values, finfo(float).tiny, None))
    return values


def tricube(distances: ndarray) -> ndarray:

    return where(distances < 1, (1 - clip(distances, 0, 1) ** 3) ** 3, 0.0)


def bisquare(values: ndarray) -> ndarray:

    return where(np_abs(values) < 1, (1 - values ** 2) ** 2, 0.0)


def local_linear(x: ndarray, y: ndarray, queries: ndarray, k: int,
                 robustness: ndarray = None) -> ndarray:
    """
    Return the local linear fit at each query, weighting the k nearest points
    by the tricube of their distance relative to the k-th nearest. A window
    whose points share one x value falls back to the weighted mean.
    """
    fitted = empty(queries.shape[0])
    for start in range(0, queries.shape[0], CHUNK_SIZE):
        q = queries[start:start + CHUNK_SIZE, None]
        distances = np_abs(x[None, :] - q)
        bandwidth = partition(distances, k - 1, axis=1)[:, k - 1:k]
        degenerate = bandwidth[:, 0] <= 0
        safe_bandwidth = where(bandwidth > 0, bandwidth, 1.0)
        weights = where(
            degenerate[:, None],
            (distances == 0).astype(float),
            tricube(distances / (safe_bandwidth * (1 + 1e-10)))
        )
        if robustness is not None:
            weights = weights * robustness[None, :]
        total = weights.sum(axis=1)
        total = where(total > 0, total, 1.0)
        x_bar = (weights * x).sum(axis=1) / total
        y_bar = (weights * y).sum(axis=1) / total
        dx = x[None, :] - x_bar[:, None]
        sxx = (weights * dx ** 2).sum(axis=1)
        sxy = (weights * dx * (y[None, :] - y_bar[:, None])).sum(axis=1)
        flat = sxx <= 1e-12 * (1 + x_bar ** 2)
        slope = where(flat, 0.0, sxy / where(flat, 1.0, sxx))
        fitted[start:start + CHUNK_SIZE] = y_bar + slope * (q[:, 0] - x_bar)
    return fitted


def loess_fit(scatter: ScatterSet, config: LoessConfig = None) -> SmoothFit:
    """
    Smooth the scatter with tricube-weighted local linear regression on a
    grid spanning the observed returns.

    :param scatter: Points to smooth.
    :param config: Smoothing settings, defaults if None.
    :raises InsufficientData: if a window would hold fewer than degree + 2
                              points.
    """
    config = config or LoessConfig()
    returns = scatter.returns
    k = ceil(config.span * scatter.n_points)
    if k < config.degree + 2:
        raise InsufficientData(
            f'a span of {config.span} over {scatter.n_points} points gives '
            f'windows of {k} points, need {config.degree + 2}'
        )
    x_scale = resolve_x_scale(returns, config.x_scale)
    order = argsort(returns, kind='stable')
    x = to_coordinate(returns[order], x_scale)
    y = scatter.log_sq_rewards[order]
    grid_x = linspace(x[0], x[-1], config.grid_points)
    robustness = None
    for iteration in range(config.robustness_iterations):
        residuals = y - local_linear(x, y, x, k, robustness)
        scale = 6 * median(np_abs(residuals))
        if scale <= 0:
            break
        robustness = bisquare(residuals / scale)
        logger.debug(f'robustness iteration {iteration + 1}: scale {scale}')
    y_hat = local_linear(x, y, grid_x, k, robustness)
    grid = exp(grid_x) if x_scale == 'log' else grid_x
    return SmoothFit(grid=grid, grid_x=grid_x, y_hat=y_hat, x_scale=x_scale)
