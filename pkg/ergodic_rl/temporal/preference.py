import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

from numpy import ndarray, asarray, diff
from pandas import DataFrame

from ergodic_rl.compound_types import PathLike
from ergodic_rl.diagnostics.statistics import mean_ci
from ergodic_rl.enums.update_rule import UPDATE_RULE
from ergodic_rl.environments.bandit import BanditParams, SAFE, \
    indifference_expected, indifference_growth
from ergodic_rl.process.rng_stream import RngStream
from ergodic_rl.settings import INDIFFERENCE_LEVEL
from ergodic_rl.temporal.bandit_agent import BanditAgentConfig, \
    train_population, greedy_actions
from ergodic_rl.temporal.time_indexed import time_indexed_population
from ergodic_rl.utils.arg_checks import check_positive_count

logger = logging.getLogger(__name__)

PREFERENCE_COLUMNS = ['p', 'safe_preference', 'ci']
SUMMARY_COLUMNS = ['update_rule', 'empirical_indifference', 'in_range',
                   'p_expected', 'p_growth']


def indifference_crossing(p_grid: Sequence[float],
                          safe_preference: Sequence[float],
                          level: float = INDIFFERENCE_LEVEL
                          ) -> Tuple[float, bool]:
    """
    Return the loss probability at which the safe preference first reaches
    the level, linearly interpolated between grid points, and whether the
    crossing lies inside the grid.

    A grid point sitting exactly on the level is returned as is. When the
    curve never reaches the level the last grid point is returned; when it
    starts at or above the level, the first. A grid of one point never
    holds the crossing.
    """
    p_grid = asarray(p_grid, dtype=float)
    safe_preference = asarray(safe_preference, dtype=float)
    reached = (safe_preference >= level).nonzero()[0]
    if len(reached) == 0:
        return float(p_grid[-1]), False
    j = reached[0]
    if safe_preference[j] == level:
        return float(p_grid[j]), len(p_grid) > 1
    if j == 0:
        return float(p_grid[0]), False
    p_lo, p_hi = p_grid[j - 1], p_grid[j]
    s_lo, s_hi = safe_preference[j - 1], safe_preference[j]
    return float(p_lo + (level - s_lo) * (p_hi - p_lo) / (s_hi - s_lo)), True


@dataclass(frozen=True, eq=False)
class PreferenceCurve(object):
    """
    Safe-action preference of trained agents across loss probabilities.
    """
    update_rule: UPDATE_RULE
    p_grid: ndarray
    safe_preference: ndarray
    ci: ndarray
    n_agents: int
    p_expected: float
    p_growth: float
    horizon: Optional[int] = None
    crossing: Tuple[float, bool] = field(init=False)

    def __post_init__(self):

        object.__setattr__(
            self, 'crossing',
            indifference_crossing(self.p_grid, self.safe_preference)
        )

    # region properties

    @property
    def empirical_indifference(self) -> float:

        return self.crossing[0]

    @property
    def in_range(self) -> bool:

        return self.crossing[1]

    @property
    def out_of_range(self) -> bool:

        return not self.crossing[1]

    # endregion

    def to_frame(self) -> DataFrame:

        return DataFrame({
            'p': self.p_grid,
            'safe_preference': self.safe_preference,
            'ci': self.ci
        }, columns=PREFERENCE_COLUMNS)

    def write_csv(self, file_path: PathLike) -> DataFrame:
        """
        Write p,safe_preference,ci with one row per grid point.
        """
        data = self.to_frame()
        data.to_csv(file_path, index=False)
        return data

    def summary(self) -> dict:

        return {
            'update_rule': self.update_rule.name,
            'empirical_indifference': self.empirical_indifference,
            'in_range': self.in_range,
            'p_expected': self.p_expected,
            'p_growth': self.p_growth,
        }

    def write_summary_csv(self, file_path: PathLike) -> DataFrame:

        data = DataFrame([self.summary()], columns=SUMMARY_COLUMNS)
        data.to_csv(file_path, index=False)
        return data


def preference_sweep(config: BanditAgentConfig, params: BanditParams,
                     p_grid: Sequence[float], episodes: int, seed: int,
                     n_agents: int = 20,
                     horizon: Optional[int] = None) -> PreferenceCurve:
    """
    Train agents at each loss probability of a grid and record how often
    they prefer the safe action.

    Agents at grid point j draw from RngStream(seed, j). One-step agents
    contribute 1 or 0 each; time-indexed agents contribute the share of
    their rounds that are greedily safe.

    :param config: Agent settings, including the update rule.
    :param params: Bandit factors. p_loss is replaced by each grid value.
    :param p_grid: Increasing loss probabilities.
    :param episodes: Training episodes per agent.
    :param seed: Base seed.
    :param n_agents: Independent agents per grid point.
    :param horizon: Rounds per episode, required by monte_carlo_trajectory.
    """
    p_grid = asarray(p_grid, dtype=float)
    if p_grid.ndim != 1 or p_grid.size == 0:
        raise ValueError('p_grid must be a non-empty sequence')
    if (diff(p_grid) <= 0).any():
        raise ValueError('p_grid must be strictly increasing')
    if p_grid[0] < 0 or p_grid[-1] > 1:
        raise ValueError('p_grid must lie within [0, 1]')
    check_positive_count(n_agents, 'n_agents')
    time_indexed = config.update_rule is UPDATE_RULE.monte_carlo_trajectory
    if time_indexed and horizon is None:
        raise ValueError('monte_carlo_trajectory sweeps need a horizon')
    means, half_widths = [], []
    for j, p_loss in enumerate(p_grid):
        point_params = params.with_p_loss(float(p_loss))
        generator = RngStream(seed, j).generator()
        if time_indexed:
            values, _ = time_indexed_population(
                config, point_params, horizon, episodes, generator, n_agents
            )
            safe = (greedy_actions(values) == SAFE).mean(axis=1)
        else:
            values, _ = train_population(
                config, point_params, episodes, generator, n_agents
            )
            safe = (greedy_actions(values) == SAFE).astype(float)
        mean, half_width = mean_ci(safe)
        means.append(mean)
        half_widths.append(half_width)
        logger.debug(f'p_loss={p_loss:.4f}: safe preference {mean:.3f}')
    curve = PreferenceCurve(
        update_rule=config.update_rule,
        p_grid=p_grid,
        safe_preference=asarray(means),
        ci=asarray(half_widths),
        n_agents=n_agents,
        p_expected=indifference_expected(params),
        p_growth=indifference_growth(params),
        horizon=horizon
    )
    if curve.out_of_range:
        logger.warning(
            f'safe preference of {config.update_rule.name} agents does not '
            f'cross {INDIFFERENCE_LEVEL} inside '
            f'[{p_grid[0]}, {p_grid[-1]}]'
        )
    else:
        logger.info(f'{config.update_rule.name} indifference at '
                    f'{curve.empirical_indifference:.4f} '
                    f'(p_E={curve.p_expected:.4f}, '
                    f'p_T={curve.p_growth:.4f})')
    return curve
