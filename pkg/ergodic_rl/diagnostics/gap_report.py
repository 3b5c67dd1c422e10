from dataclasses import dataclass
from typing import Optional

from numpy import ndarray, isfinite
from pandas import DataFrame

from ergodic_rl.compound_types import PathLike


@dataclass(frozen=True, eq=False)
class ErgodicityGapReport(object):
    """
    Comparison of ensemble averages of the per-step reward at fixed times with
    time averages along each trajectory.

    ensemble_mean_at and ensemble_ci are aligned with probe_times.
    time_mean_per_traj and time_ci_per_traj hold one value per trajectory;
    time_ci_per_traj are batch-means half-widths. time_mean and time_ci are
    the mean of the time means and its half-width across trajectories.

    strict_gap uses the probe at t = 0, asymptotic_gap the last probe at or
    after burn_in (None if there is none), and gap the last probe.
    """
    probe_times: ndarray
    ensemble_mean_at: ndarray
    ensemble_ci: ndarray
    time_mean_per_traj: ndarray
    time_ci_per_traj: ndarray
    time_mean: float
    time_ci: float
    n_trajectories: int
    horizon: int
    burn_in: int
    strict_gap: float
    strict_ci: float
    asymptotic_gap: Optional[float]
    asymptotic_ci: Optional[float]
    gap: float
    ci_halfwidth: float

    def __post_init__(self):

        for name in ('ensemble_mean_at', 'time_mean_per_traj'):
            if not isfinite(getattr(self, name)).all():
                raise ValueError(f'{name} must be finite')
        if self.ci_halfwidth < 0 or (self.ensemble_ci < 0).any():
            raise ValueError('confidence half-widths must be non-negative')

    # region properties

    @property
    def within_ci(self) -> bool:
        """
        Return True if the gap at the last probe is inside the combined
        confidence half-widths.
        """
        return self.gap <= self.ci_halfwidth

    @property
    def strict_within_ci(self) -> bool:

        return self.strict_gap <= self.strict_ci

    @property
    def asymptotic_within_ci(self) -> Optional[bool]:

        if self.asymptotic_gap is None:
            return None
        return self.asymptotic_gap <= self.asymptotic_ci

    # endregion

    def ensemble_frame(self) -> DataFrame:
        """
        Return one row per probe time with columns t, ensemble_mean, ci.
        """
        return DataFrame({
            't': self.probe_times,
            'ensemble_mean': self.ensemble_mean_at,
            'ci': self.ensemble_ci
        })

    def time_frame(self) -> DataFrame:
        """
        Return one row per trajectory with columns trajectory, time_mean, ci.
        """
        return DataFrame({
            'trajectory': range(self.n_trajectories),
            'time_mean': self.time_mean_per_traj,
            'ci': self.time_ci_per_traj
        })

    def write_csv(self, ensemble_path: PathLike, time_path: PathLike):

        self.ensemble_frame().to_csv(ensemble_path, index=False)
        self.time_frame().to_csv(time_path, index=False)

    def to_dict(self) -> dict:

        return {
            'n_trajectories': self.n_trajectories,
            'horizon': self.horizon,
            'burn_in': self.burn_in,
            'time_mean': self.time_mean,
            'time_ci': self.time_ci,
            'strict_gap': self.strict_gap,
            'strict_ci': self.strict_ci,
            'asymptotic_gap': self.asymptotic_gap,
            'asymptotic_ci': self.asymptotic_ci,
            'gap': self.gap,
            'ci_halfwidth': self.ci_halfwidth,
        }
