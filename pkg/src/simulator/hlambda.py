"""
Numerical check that {q * lam^p * (1 - lam^p)} is eps-dense in an interval.
"""
import logging
import math
from typing import Optional

import numpy as np

logger = logging.getLogger(__name__)

MAX_VALUES = 5_000_000


def hlambda_oracle(lam: float, p_min: int, p_max: int, q_bound: Optional[int],
                   low: float, high: float, eps: float,
                   max_values: int = MAX_VALUES) -> bool:
    """
    Decide whether every grid point of [low, high] at step eps has a value
    q * lam^p * (1 - lam^p), p_min <= p <= p_max, |q| <= q_bound, within eps.

    Args:
        lam: Ratio, > 1
        q_bound: Largest |q|; None picks, for each p, the smallest bound
            reaching both ends of the interval
        max_values: Enumeration budget; exceeding it answers False

    Raises:
        ValueError: lam <= 1, empty p range, q_bound < 1 or high < low
    """
    if lam <= 1:
        raise ValueError(f"lam must be > 1, got {lam}")
    if p_min > p_max:
        raise ValueError(f"Empty exponent range {p_min}..{p_max}")
    if q_bound is not None and q_bound < 1:
        raise ValueError(f"q_bound must be >= 1, got {q_bound}")
    if high < low or eps <= 0:
        raise ValueError("Need low <= high and eps > 0")
    if eps >= high - low:
        return True

    reach = max(abs(low), abs(high))
    pieces = []
    total = 0
    for p in range(p_min, p_max + 1):
        value = lam ** p * (1 - lam ** p)
        if value == 0 or not math.isfinite(value):
            continue
        bound = q_bound if q_bound is not None else math.ceil(reach / abs(value)) + 1
        total += 2 * bound + 1
        if total > max_values:
            logger.warning(f"hlambda enumeration exceeds {max_values} values at p={p}")
            return False
        pieces.append(np.arange(-bound, bound + 1, dtype=float) * value)
    if not pieces:
        return False

    values = np.unique(np.concatenate(pieces))
    grid = np.arange(low, high + eps / 2, eps)
    right = np.clip(np.searchsorted(values, grid), 0, len(values) - 1)
    left = np.clip(right - 1, 0, len(values) - 1)
    nearest = np.minimum(np.abs(values[right] - grid), np.abs(values[left] - grid))
    covered = bool(np.all(nearest <= eps))
    logger.debug(f"hlambda: {len(values)} values, worst gap {float(nearest.max()):.3g}")
    return covered
