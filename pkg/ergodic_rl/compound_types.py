from pathlib import Path
from typing import Union, Sequence, Tuple, Dict, Any

from numpy import ndarray

FloatArrayLike = Union[Sequence[float], ndarray]
Scalar = Union[int, float]
PathLike = Union[str, Path]
ScatterPoint = Tuple[float, float]
ConfigDict = Dict[str, Any]
