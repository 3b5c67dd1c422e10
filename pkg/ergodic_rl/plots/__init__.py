from ergodic_rl.plots.axes_formatter import AxesFormatter
from ergodic_rl.plots.figure_formatter import FigureFormatter
from ergodic_rl.plots.experiment_plots import plot_returns, \
    plot_ergodicity_gap, plot_preference, plot_transformation, \
    plot_learning_curve
