import os
from pathlib import Path
from tempfile import NamedTemporaryFile
from typing import Optional

import matplotlib.pyplot as plt
from matplotlib.axes import Axes
from matplotlib.figure import Figure

from ergodic_rl.compound_types import PathLike
from ergodic_rl.settings import PLOT_FILE_TYPE, SVG_HASH_SALT

FILE_TYPES = [
    'eps',
    'jpg',
    'jpeg',
    'pdf',
    'png',
    'ps',
    'svg',
    'tif',
    'tiff',
]


def save_plot(
        plot_object,
        file_path: PathLike,
        file_type: Optional[str] = None
) -> Path:
    """
    Save a plot object to disk and return the path written.

    SVG output is byte-for-byte reproducible: element ids are salted with a
    fixed string and no date is stamped.

    :param plot_object: Axes or Figure to save.
    :param file_path: The file path to save the plot object to.
    :param file_type: The type of file to save.
                      Detects from filename if possible.
                      Defaults to svg if not given.
    """
    file_path = Path(file_path)
    if file_type is None:
        suffix = file_path.suffix.lstrip('.')
        file_type = suffix if suffix in FILE_TYPES else PLOT_FILE_TYPE
    if file_type not in FILE_TYPES:
        raise ValueError(f'file_type must be in {FILE_TYPES}')
    if isinstance(plot_object, Axes):
        fig = plot_object.figure
    elif isinstance(plot_object, Figure):
        fig = plot_object
    else:
        raise ValueError(
            'plot_object must be one of Axes, Figure. '
            f'Type passed was {type(plot_object)}'
        )
    if file_path.suffix != f'.{file_type}':
        file_path = file_path.with_name(f'{file_path.name}.{file_type}')
    kwargs = {'format': file_type, 'dpi': fig.dpi}
    if file_type in ('svg', 'pdf'):
        kwargs['metadata'] = {'Date': None}
    with plt.rc_context({'svg.hashsalt': SVG_HASH_SALT}):
        fig.savefig(file_path, **kwargs)
    return file_path


def write_text_atomic(text: str, file_path: PathLike) -> Path:
    """
    Write text to a temporary file next to the target and rename it into
    place, so readers never see a partial file.
    """
    file_path = Path(file_path)
    with NamedTemporaryFile('w', dir=file_path.parent, delete=False,
                            prefix=f'.{file_path.name}.',
                            encoding='utf-8') as f:
        f.write(text)
        temp_path = f.name
    os.replace(temp_path, file_path)
    return file_path
