from typing import List, Optional, Tuple, Union

import matplotlib.pyplot as plt
from matplotlib.figure import Figure
from numpy import atleast_1d

from ergodic_rl.compound_types import PathLike, Scalar
from ergodic_rl.plots.axes_formatter import AxesFormatter
from ergodic_rl.utils.io_utils import save_plot


class FigureFormatter(object):

    share_values = ('all', 'row', 'col', 'none')

    def __init__(self, n_rows: int = 1, n_cols: int = 1,
                 fig_size: Tuple[Scalar, Scalar] = (12, 5),
                 share_x: str = 'none', share_y: str = 'none'):

        if share_x not in self.share_values:
            raise ValueError(f'share_x must be in {self.share_values}')
        if share_y not in self.share_values:
            raise ValueError(f'share_y must be in {self.share_values}')
        figure, axes = plt.subplots(
            nrows=n_rows, ncols=n_cols,
            sharex=share_x, sharey=share_y,
            figsize=fig_size,
            constrained_layout=True
        )
        self._figure: Figure = figure
        self._axes = atleast_1d(axes)

    # region properties

    @property
    def figure(self) -> Figure:
        return self._figure

    @property
    def axes(self) -> List[AxesFormatter]:
        """
        Return an AxesFormatter for each Axes, in row-major order.
        """
        return [AxesFormatter(ax) for ax in self._axes.flat]

    @property
    def single(self) -> AxesFormatter:
        """
        Return an AxesFormatter for the only Axes.
        """
        if self._axes.size != 1:
            raise TypeError('FigureFormatter holds an array of Axes.')
        return AxesFormatter(self._axes.flat[0])

    # endregion

    def set_title(self, text: str) -> 'FigureFormatter':
        """
        Set the title of the Figure.

        :param text: The text for the title.
        """
        self._figure.suptitle(t=text)
        return self

    def save(self, file_path: PathLike,
             file_type: Optional[str] = None) -> 'FigureFormatter':
        """
        Save the plot to disk.

        :param file_path: The file path to save the plot object to.
        :param file_type: The type of file to save.
                          Defaults to svg if can't be auto-detected from name.
        """
        save_plot(plot_object=self._figure, file_path=file_path,
                  file_type=file_type)
        return self

    def close(self):

        plt.close(self._figure)


PlotFormatter = Union[AxesFormatter, FigureFormatter]
