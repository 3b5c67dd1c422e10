from typing import Optional, Tuple

from numpy import ndarray, asarray, linspace, zeros, exp, diff, isfinite, \
    array_equal, cumsum
from numpy.random import Generator

from ergodic_rl.exceptions import ShapeError
from ergodic_rl.process.policy_spec import sample_from_rows
from ergodic_rl.settings import FRACTION_GRID_POINTS


def fraction_grid(n_points: int = FRACTION_GRID_POINTS) -> ndarray:
    """
    Return n evenly spaced stake fractions from 0 to 1 inclusive.
    """
    if n_points < 1:
        raise ValueError(f'n_points must be positive, got {n_points}')
    if n_points == 1:
        return zeros(1)
    return linspace(0.0, 1.0, n_points)


class DiscretizedFractionPolicy(object):
    """
    Softmax policy over a grid of stake fractions.
    """
    def __init__(self, grid: Optional[ndarray] = None,
                 logits: Optional[ndarray] = None,
                 temperature: float = 1.0):
        """
        Create a new DiscretizedFractionPolicy.

        :param grid: Strictly increasing fractions in [0, 1]. Defaults to 21
                     points.
        :param logits: One logit per grid point. Defaults to zeros.
        :param temperature: Positive softmax temperature.
        """
        grid = fraction_grid() if grid is None else asarray(grid, dtype=float)
        if grid.ndim != 1 or grid.size == 0:
            raise ShapeError('grid must be a non-empty vector')
        if (grid < 0).any() or (grid > 1).any():
            raise ValueError('grid fractions must be in [0, 1]')
        if (diff(grid) <= 0).any():
            raise ValueError('grid must be strictly increasing')
        logits = zeros(grid.size) if logits is None \
            else asarray(logits, dtype=float).copy()
        if logits.shape != grid.shape:
            raise ShapeError(
                f'logits shape {logits.shape} does not match grid {grid.shape}'
            )
        if temperature <= 0:
            raise ValueError(
                f'temperature must be positive, got {temperature}'
            )
        self._grid: ndarray = grid
        self._logits: ndarray = logits
        self._temperature: float = temperature

    # region properties

    @property
    def grid(self) -> ndarray:

        return self._grid

    @property
    def logits(self) -> ndarray:

        return self._logits

    @logits.setter
    def logits(self, value: ndarray):

        value = asarray(value, dtype=float)
        if value.shape != self._grid.shape:
            raise ShapeError(
                f'logits shape {value.shape} does not match grid '
                f'{self._grid.shape}'
            )
        self._logits = value.copy()

    @property
    def temperature(self) -> float:

        return self._temperature

    @property
    def probabilities(self) -> ndarray:

        scaled = self._logits / self._temperature
        weights = exp(scaled - scaled.max())
        return weights / weights.sum()

    @property
    def mean_alpha(self) -> float:

        return float(self.probabilities @ self._grid)

    @property
    def greedy_alpha(self) -> float:

        return float(self._grid[self._logits.argmax()])

    @property
    def is_finite(self) -> bool:

        return bool(isfinite(self._logits).all())

    # endregion

    def score(self, index: int) -> ndarray:
        """
        Return the gradient of log pi(index) with respect to the logits.
        """
        one_hot = zeros(self._grid.size)
        one_hot[index] = 1.0
        return (one_hot - self.probabilities) / self._temperature

    def sample_fractions(self, size, generator: Generator
                         ) -> Tuple[ndarray, ndarray]:
        """
        Return (grid indices, fractions) for size draws, one uniform each.
        """
        uniforms = generator.random(size)
        indices = sample_from_rows(
            cumsum(self.probabilities), asarray(uniforms).ravel()
        ).reshape(uniforms.shape)
        return indices, self._grid[indices]

    def copy(self) -> 'DiscretizedFractionPolicy':

        return DiscretizedFractionPolicy(
            grid=self._grid, logits=self._logits,
            temperature=self._temperature
        )

    def equals(self, other: 'DiscretizedFractionPolicy') -> bool:

        return (
            array_equal(self._grid, other.grid) and
            array_equal(self._logits, other.logits) and
            self._temperature == other.temperature
        )

    def to_dict(self) -> dict:

        return {
            'grid': self._grid.tolist(),
            'logits': self._logits.tolist(),
            'temperature': self._temperature,
            'mean_alpha': self.mean_alpha,
        }

    def __repr__(self) -> str:

        return (f'DiscretizedFractionPolicy(n={self._grid.size}, '
                f'mean_alpha={self.mean_alpha:.4f})')
