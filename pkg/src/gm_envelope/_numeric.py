"""Small floating-point helpers shared by the bound modules."""

from __future__ import annotations

import math


def log_shifted(base: float, delta: float) -> float:
    """Return log(base + delta) for base > 0, or -inf when base + delta <= 0.

    Uses log1p when the shift is small relative to ``base`` so that factors
    close to ``base`` keep full relative precision in the log.
    """
    if abs(delta) < 0.5 * base:
        return math.log(base) + math.log1p(delta / base)
    value = base + delta
    if value <= 0.0:
        return -math.inf
    return math.log(value)


def safe_exp(x: float) -> float:
    """exp that maps overflow to +inf and -inf to 0."""
    if x == -math.inf:
        return 0.0
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf


def signed_exp(sign: int, log_abs: float) -> float:
    if sign == 0:
        return 0.0
    return sign * safe_exp(log_abs)
