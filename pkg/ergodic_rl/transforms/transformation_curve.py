from dataclasses import dataclass, field

from numpy import ndarray, asarray, diff, exp, isfinite
from pandas import DataFrame, read_csv
from scipy.integrate import cumulative_trapezoid
from scipy.interpolate import interp1d

from ergodic_rl.compound_types import PathLike
from ergodic_rl.exceptions import FitError, SchemaError
from ergodic_rl.literals import X_SCALE
from ergodic_rl.transforms.loess import SmoothFit, to_coordinate


@dataclass(frozen=True, eq=False)
class TransformationCurve(object):
    """
    A strictly increasing transformation h of the return, given on a grid of
    returns with h(grid[0]) = 0.

    Between grid points h is linear in the smoothing coordinate (R, or ln R
    for x_scale 'log'); beyond the grid it continues with the end slopes.
    """
    grid: ndarray
    h_values: ndarray
    x_scale: X_SCALE = 'linear'
    _interpolator: interp1d = field(init=False, repr=False)

    def __post_init__(self):

        grid = asarray(self.grid, dtype=float)
        h_values = asarray(self.h_values, dtype=float)
        if grid.ndim != 1 or grid.shape != h_values.shape or grid.size < 2:
            raise ValueError('grid and h_values must be matching vectors '
                             'of at least 2 points')
        if (diff(grid) <= 0).any():
            raise ValueError('grid must be strictly increasing')
        if (diff(h_values) <= 0).any():
            raise ValueError('h must be strictly increasing on the grid')
        if h_values[0] != 0:
            raise ValueError(f'h(grid[0]) must be 0, got {h_values[0]}')
        object.__setattr__(self, 'grid', grid)
        object.__setattr__(self, 'h_values', h_values)
        object.__setattr__(self, '_interpolator', interp1d(
            to_coordinate(grid, self.x_scale), h_values,
            kind='linear', assume_sorted=True, fill_value='extrapolate'
        ))

    def __call__(self, returns) -> ndarray:
        """
        Return h at each return.
        """
        return self._interpolator(to_coordinate(returns, self.x_scale))

    def to_frame(self) -> DataFrame:

        return DataFrame({'R': self.grid, 'h': self.h_values})

    def write_csv(self, file_path: PathLike) -> DataFrame:
        """
        Write the curve as CSV with columns R,h.
        """
        data = self.to_frame()
        data.to_csv(file_path, index=False)
        return data


def read_transformation_csv(file_path: PathLike,
                            x_scale: X_SCALE = 'linear'
                            ) -> TransformationCurve:

    data = read_csv(file_path)
    for column in ('R', 'h'):
        if column not in data.columns:
            raise SchemaError(
                f'transformation CSV is missing column {column!r}',
                column=column
            )
    return TransformationCurve(grid=data['R'].to_numpy(),
                               h_values=data['h'].to_numpy(),
                               x_scale=x_scale)


def integrate_transformation(fit: SmoothFit) -> TransformationCurve:
    """
    Integrate h'(R) = exp(-y_hat(R) / 2) over the grid with the trapezoid
    rule, starting from h = 0 at the first grid point. In log coordinates the
    integrand is exp(ln R - y_hat / 2) with respect to ln R.

    :raises FitError: if the smooth has non-finite values or the result is
                      not strictly increasing.
    """
    y_hat = asarray(fit.y_hat, dtype=float)
    if not isfinite(y_hat).all():
        raise FitError('smoothed values must be finite')
    if fit.grid_x.size < 2 or (diff(fit.grid_x) <= 0).any():
        raise FitError('the grid needs at least 2 increasing points')
    if fit.x_scale == 'log':
        slope = exp(fit.grid_x - y_hat / 2)
    else:
        slope = exp(-y_hat / 2)
    h_values = cumulative_trapezoid(slope, fit.grid_x, initial=0)
    if not isfinite(h_values).all() or (diff(h_values) <= 0).any():
        raise FitError('integrated transformation is not strictly increasing')
    return TransformationCurve(grid=fit.grid, h_values=h_values,
                               x_scale=fit.x_scale)
