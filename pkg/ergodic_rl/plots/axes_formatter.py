from typing import Optional

import matplotlib.pyplot as plt
from matplotlib.axes import Axes
from matplotlib.figure import Figure

from ergodic_rl.compound_types import PathLike, Scalar
from ergodic_rl.literals import AXIS_SCALE
from ergodic_rl.utils.arg_transforms import drop_none_values
from ergodic_rl.utils.io_utils import save_plot

AXIS_SCALES = ('log', 'linear', 'symlog', 'logit')


def new_axes(width: Optional[Scalar] = None,
             height: Optional[Scalar] = None,
             constrained_layout: bool = True) -> Axes:
    """
    Return new matplotlib axes.
    """
    width = width or 8
    height = height or 5
    _, ax = plt.subplots(
        figsize=(width, height),
        constrained_layout=constrained_layout
    )
    return ax


class AxesFormatter(object):

    def __init__(self, axes: Optional[Axes] = None,
                 width: Optional[Scalar] = None,
                 height: Optional[Scalar] = None):
        """
        Create a new AxesFormatter

        :param axes: The matplotlib Axes instance to wrap.
        :param width: Width of new Axes, if none are given.
        :param height: Height of new Axes, if none are given.
        """
        if axes is None:
            self._axes: Axes = new_axes(width=width, height=height)
        else:
            self._axes: Axes = axes

    # region properties

    @property
    def axes(self) -> Axes:
        """
        Return the wrapped Axes instance.
        """
        return self._axes

    @property
    def figure(self) -> Figure:

        return self._axes.figure

    # endregion

    # region set text

    def set_text(self, title: Optional[str] = None,
                 x_label: Optional[str] = None,
                 y_label: Optional[str] = None) -> 'AxesFormatter':
        """
        Set text properties for elements of the Axes.

        :param title: Text for the title.
        :param x_label: Text for the x-axis label.
        :param y_label: Text for the y-axis label.
        """
        if title is not None:
            self._axes.set_title(title)
        if x_label is not None:
            self._axes.set_xlabel(x_label)
        if y_label is not None:
            self._axes.set_ylabel(y_label)
        return self

    def get_title_text(self) -> str:

        return self._axes.get_title()

    # endregion

    # region set scale

    def set_x_scale(self, scale: AXIS_SCALE) -> 'AxesFormatter':
        """
        Set the scale for the x-axis.

        :param scale: One of ['log', 'linear', 'symlog', 'logit']
        """
        if scale not in AXIS_SCALES:
            raise ValueError(f'scale must be in {AXIS_SCALES}')
        self._axes.set_xscale(scale)
        return self

    def set_y_scale(self, scale: AXIS_SCALE) -> 'AxesFormatter':
        """
        Set the scale for the y-axis.

        :param scale: One of ['log', 'linear', 'symlog', 'logit']
        """
        if scale not in AXIS_SCALES:
            raise ValueError(f'scale must be in {AXIS_SCALES}')
        self._axes.set_yscale(scale)
        return self

    # endregion

    # region spans

    def add_h_line(self, y: float = 0,
                   color: Optional[str] = None,
                   alpha: Optional[float] = None,
                   line_style: Optional[str] = None,
                   line_width: Optional[float] = None,
                   label: Optional[str] = None) -> 'AxesFormatter':
        """
        Add a horizontal line across the plot.

        :param y: y position in data coordinates of the horizontal line
        :param color: Color of the line
        :param alpha: Opacity of the line
        :param line_style: One of {'-', '--', '-.', ':', ''}
        :param line_width: Width of the line
        :param label: Text for the legend
        """
        self._axes.axhline(y=y, **drop_none_values({
            'c': color, 'alpha': alpha, 'ls': line_style,
            'lw': line_width, 'label': label
        }))
        return self

    def add_v_line(self, x: float = 0,
                   color: Optional[str] = None,
                   alpha: Optional[float] = None,
                   line_style: Optional[str] = None,
                   line_width: Optional[float] = None,
                   label: Optional[str] = None) -> 'AxesFormatter':
        """
        Add a vertical line across the plot.

        :param x: x position in data coordinates of the vertical line
        :param color: Color of the line
        :param alpha: Opacity of the line
        :param line_style: One of {'-', '--', '-.', ':', ''}
        :param line_width: Width of the line
        :param label: Text for the legend
        """
        self._axes.axvline(x=x, **drop_none_values({
            'c': color, 'alpha': alpha, 'ls': line_style,
            'lw': line_width, 'label': label
        }))
        return self

    def fill_between(self, x, y_lower, y_upper,
                     color: Optional[str] = None,
                     alpha: Optional[float] = 0.2,
                     label: Optional[str] = None) -> 'AxesFormatter':
        """
        Shade the band between two curves.
        """
        self._axes.fill_between(x, y_lower, y_upper, **drop_none_values({
            'color': color, 'alpha': alpha, 'label': label
        }))
        return self

    # endregion

    def add_legend(self, location: str = 'best') -> 'AxesFormatter':

        self._axes.legend(loc=location)
        return self

    def save(self, file_path: PathLike,
             file_type: Optional[str] = None) -> 'AxesFormatter':
        """
        Save the plot to disk.

        :param file_path: The file path to save the plot object to.
        :param file_type: The type of file to save.
                          Defaults to svg if can't be auto-detected from name.
        """
        save_plot(plot_object=self._axes, file_path=file_path,
                  file_type=file_type)
        return self

    def close(self):

        plt.close(self.figure)
