from numpy import log, finfo, ndarray, full_like, inf

from ergodic_rl.compound_types import Scalar


SMALLEST_LOG = float(log(finfo(float).tiny))


def log_ratio(numerator: ndarray, denominator: ndarray) -> ndarray:
    """
    Return log(numerator / denominator) elementwise, with -inf wherever either
    value is non-positive.
    """
    valid = (numerator > 0) & (denominator > 0)
    out = full_like(numerator, -inf, dtype=float)
    out[valid] = log(numerator[valid] / denominator[valid])
    return out


def clamp_log(value: Scalar) -> float:
    """
    Clamp a log value from below at the log of the smallest positive float.
    """
    return max(float(value), SMALLEST_LOG)


def format_as_percent(number: Scalar, ndp: int = 1) -> str:
    """
    Format a proportion as a percentage with a given number of decimal places.

    :param number: The number to format.
    :param ndp: Number of decimal places.
    """
    return f'{number:.{ndp}%}'
