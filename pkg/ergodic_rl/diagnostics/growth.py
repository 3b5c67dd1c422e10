import logging
from dataclasses import dataclass

from numpy import asarray, log, exp, inf

from ergodic_rl.exceptions import InsufficientData
from ergodic_rl.utils.arg_checks import check_positive_count

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GrowthEstimate(object):
    """
    Per-step log growth of a return series measured over windows of N steps.

    per_step_log_growth is -inf when any window ratio involves a non-positive
    return; non_positive_count says how many did.
    """
    per_step_log_growth: float
    window: int
    valid_steps: int
    non_positive_count: int = 0

    @property
    def is_flagged(self) -> bool:

        return self.non_positive_count > 0

    @property
    def growth_factor(self) -> float:

        return float(exp(self.per_step_log_growth))


def growth_rate_estimate(returns, window: int = 1) -> GrowthEstimate:
    """
    Estimate the per-step log growth of a return series R_0, R_1, ..., R_T as
    the mean of log(R_k / R_{k-N}) / N over consecutive non-overlapping
    windows.

    :param returns: Return series including the initial return.
    :param window: Window length N in steps.
    """
    check_positive_count(window, 'window')
    returns = asarray(returns, dtype=float)
    if returns.ndim != 1 or returns.size < window + 1:
        raise InsufficientData(
            f'need at least {window + 1} returns for a window of {window}'
        )
    points = returns[::window]
    previous = points[:-1]
    following = points[1:]
    positive = (previous > 0) & (following > 0)
    non_positive = int((~positive).sum())
    if non_positive:
        logger.debug(f'{non_positive} windows touch a non-positive return')
        rate = -inf
    else:
        rate = float(log(following / previous).mean()) / window
    return GrowthEstimate(
        per_step_log_growth=rate,
        window=window,
        valid_steps=int(positive.sum()),
        non_positive_count=non_positive
    )
