"""Sharp bounds on the product and geometric mean of a sequence from its
arithmetic mean and variance."""

__version__ = "0.1.0"

from .bounds import (
    ExtremalSequence,
    GmBounds,
    Kind,
    Regime,
    RegimeTag,
    SequenceStats,
    StatProfile,
    am_gm_gap_bound,
    classify,
    extremal_sequence,
    geometric_mean_bounds,
    product_bounds,
    stats_of,
)
from .errors import GmEnvelopeError
from .ladder import build_ladder, critical_point, critical_value, logP_derivative, normalized_P

__all__ = [
    "ExtremalSequence",
    "GmBounds",
    "GmEnvelopeError",
    "Kind",
    "Regime",
    "RegimeTag",
    "SequenceStats",
    "StatProfile",
    "am_gm_gap_bound",
    "build_ladder",
    "classify",
    "critical_point",
    "critical_value",
    "extremal_sequence",
    "geometric_mean_bounds",
    "logP_derivative",
    "normalized_P",
    "product_bounds",
    "stats_of",
]
