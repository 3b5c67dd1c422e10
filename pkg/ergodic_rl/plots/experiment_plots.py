"""
Plots of experiment outputs. Each function takes the frames the experiment
writes to disk, so saved CSVs can be re-plotted without re-running.
"""
import logging
from typing import Optional

from matplotlib.axes import Axes
from pandas import DataFrame
from seaborn import axes_style, lineplot, scatterplot

from ergodic_rl.plots.axes_formatter import AxesFormatter
from ergodic_rl.plots.figure_formatter import FigureFormatter
from ergodic_rl.settings import INDIFFERENCE_LEVEL

logger = logging.getLogger(__name__)

PLOT_STYLE = 'whitegrid'


def plot_returns(trajectories: DataFrame, max_paths: int = 20,
                 log_scale: Optional[bool] = None,
                 ax: Optional[Axes] = None) -> AxesFormatter:
    """
    Plot individual return paths with the ensemble mean and median and a
    reference line at the initial return.

    :param trajectories: Frame with the trajectory CSV columns.
    :param max_paths: Number of individual paths to draw.
    :param log_scale: Log y-axis. Defaults to True when all returns are
                      positive.
    :param ax: Optional matplotlib Axes instance to plot on.
    """
    if log_scale is None:
        log_scale = bool((trajectories['return'] > 0).all())
    with axes_style(PLOT_STYLE):
        axf = AxesFormatter(ax)
        streams = sorted(trajectories['stream_id'].unique())[:max_paths]
        paths = trajectories.loc[trajectories['stream_id'].isin(streams)]
        lineplot(data=paths, x='step', y='return', units='stream_id',
                 estimator=None, color='grey', alpha=0.3, lw=0.8,
                 ax=axf.axes)
        by_step = trajectories.groupby('step')['return']
        summary = DataFrame({
            'ensemble mean': by_step.mean(),
            'median': by_step.median()
        })
        for column, color in zip(summary.columns, ('C0', 'C3')):
            axf.axes.plot(summary.index, summary[column], color=color,
                          lw=2, label=column)
        first = trajectories.loc[trajectories['step'] == 0]
        initial = float((first['return'] - first['reward']).mean())
        if initial > 0 or not log_scale:
            axf.add_h_line(initial, color='k', line_style='--',
                           line_width=1, label='initial return')
    if log_scale:
        axf.set_y_scale('log')
    return axf.set_text(x_label='step', y_label='return').add_legend()


def plot_ergodicity_gap(ensemble: DataFrame, time_means: DataFrame,
                        ax: Optional[Axes] = None) -> AxesFormatter:
    """
    Plot the ensemble mean over probe times against the mean of the
    trajectories' time averages.

    :param ensemble: Frame with columns t, ensemble_mean, ci.
    :param time_means: Frame with columns trajectory, time_mean, ci.
    :param ax: Optional matplotlib Axes instance to plot on.
    """
    with axes_style(PLOT_STYLE):
        axf = AxesFormatter(ax)
        axf.axes.plot(ensemble['t'], ensemble['ensemble_mean'],
                      marker='o', label='ensemble mean')
        axf.fill_between(ensemble['t'],
                         ensemble['ensemble_mean'] - ensemble['ci'],
                         ensemble['ensemble_mean'] + ensemble['ci'])
        axf.add_h_line(time_means['time_mean'].mean(), color='C3',
                       line_style='--', label='time average')
    return axf.set_text(x_label='t', y_label='reward').add_legend()


def plot_preference(preference: DataFrame,
                    p_expected: Optional[float] = None,
                    p_growth: Optional[float] = None,
                    label: Optional[str] = None,
                    ax: Optional[Axes] = None) -> AxesFormatter:
    """
    Plot safe-action preference against loss probability, with the analytic
    indifference points marked.

    :param preference: Frame with columns p, safe_preference, ci.
    :param p_expected: Indifference point of the expected factor.
    :param p_growth: Indifference point of the growth rate.
    :param label: Legend text for the curve.
    :param ax: Optional matplotlib Axes instance to plot on.
    """
    with axes_style(PLOT_STYLE):
        axf = AxesFormatter(ax)
        axf.axes.errorbar(preference['p'], preference['safe_preference'],
                          yerr=preference['ci'], marker='o', capsize=3,
                          label=label or 'safe preference')
        axf.add_h_line(INDIFFERENCE_LEVEL, color='grey', line_style=':')
        if p_expected is not None:
            axf.add_v_line(p_expected, color='C1', line_style='--',
                           label='$p_E$')
        if p_growth is not None:
            axf.add_v_line(p_growth, color='C2', line_style='--',
                           label='$p_T$')
    return axf.set_text(x_label='loss probability',
                        y_label='safe preference').add_legend()


def plot_transformation(transformation: DataFrame,
                        scatter: Optional[DataFrame] = None,
                        log_x: bool = False) -> FigureFormatter:
    """
    Plot a learned transformation and, if given, the scatter it was fitted
    to.

    :param transformation: Frame with columns R, h.
    :param scatter: Frame with columns R, log_sq_reward.
    :param log_x: Log scale for the return axis.
    """
    n_cols = 1 if scatter is None else 2
    with axes_style(PLOT_STYLE):
        ff = FigureFormatter(n_cols=n_cols, share_x='all')
        curve_axf = ff.axes[-1]
        lineplot(data=transformation, x='R', y='h', ax=curve_axf.axes)
        curve_axf.set_text(title='transformation', x_label='R', y_label='h')
        if scatter is not None:
            scatter_axf = ff.axes[0]
            scatterplot(data=scatter, x='R', y='log_sq_reward', s=6,
                        alpha=0.4, ax=scatter_axf.axes)
            scatter_axf.set_text(title='squared reward',
                                 x_label='R', y_label='ln r²')
    if log_x:
        for axf in ff.axes:
            axf.set_x_scale('log')
    return ff


def plot_learning_curve(curve: DataFrame, column: str = 'objective',
                        ax: Optional[Axes] = None) -> AxesFormatter:
    """
    Plot one column of a learning curve against iteration.
    """
    if column not in curve.columns:
        raise ValueError(f'column must be in {list(curve.columns)}')
    with axes_style(PLOT_STYLE):
        axf = AxesFormatter(ax)
        lineplot(data=curve, x='iteration', y=column, ax=axf.axes)
    return axf.set_text(x_label='iteration', y_label=column)
