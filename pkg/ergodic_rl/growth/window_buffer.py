from collections import deque
from math import log, exp
from typing import List

from ergodic_rl.exceptions import UndefinedGrowth
from ergodic_rl.utils.arg_checks import check_positive_count


class WindowBuffer(object):
    """
    Ring of the last N + 1 returns R_{k-N}, ..., R_k.
    """
    def __init__(self, window_n: int):

        check_positive_count(window_n, 'window_n')
        self._window_n: int = window_n
        self._values: deque = deque(maxlen=window_n + 1)

    # region properties

    @property
    def window_n(self) -> int:

        return self._window_n

    @property
    def capacity(self) -> int:

        return self._window_n + 1

    @property
    def valid_count(self) -> int:

        return len(self._values)

    @property
    def is_full(self) -> bool:

        return len(self._values) == self.capacity

    @property
    def values(self) -> List[float]:

        return list(self._values)

    # endregion

    def push(self, value: float):

        self._values.append(float(value))

    def extend(self, values):

        for value in values:
            self.push(value)

    def clear(self):

        self._values.clear()


def geometric_mean_window(buffer: WindowBuffer) -> float:
    """
    Return the per-step growth factor over the window,
    (R_k / R_{k-N}) ** (1 / N).

    :raises UndefinedGrowth: if the buffer is not full or holds a
                             non-positive return.
    """
    if not buffer.is_full:
        raise UndefinedGrowth(
            f'window holds {buffer.valid_count} of {buffer.capacity} returns'
        )
    values = buffer.values
    if min(values) <= 0:
        raise UndefinedGrowth('window holds a non-positive return')
    return exp(log(values[-1] / values[0]) / buffer.window_n)
