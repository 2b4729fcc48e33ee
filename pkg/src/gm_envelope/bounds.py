"""Sharp product bounds from the mean and standard deviation alone.

For ``n`` reals with mean ``mu > 0`` and population standard deviation
``sigma`` the product ``x_1 ... x_n`` lies between

    (mu - sigma*s) * (mu + sigma/s)**(n-1)    and    (mu + sigma*s) * (mu - sigma/s)**(n-1)

with ``s = sqrt(n - 1)``.  Both ends are attained by two-valued sequences in
which ``n - 1`` terms coincide.  When ``sigma*s >= mu`` positive sequences with
that profile still exist but the lower end is the (unattained) infimum 0, and
when ``sigma/s >= mu`` no positive sequence exists at all.

All bounds are evaluated as sums of logarithms; linear values are derived
from the logs so that ``n`` in the millions neither overflows nor underflows.
"""

from __future__ import annotations

import enum
import math
from collections.abc import Iterable
from dataclasses import dataclass
from typing import NamedTuple

from ._numeric import log_shifted, safe_exp
from .errors import (
    InfimumNotAttained,
    InvalidLength,
    InvalidProfile,
    NoPositiveSequence,
)

__all__ = [
    "StatProfile",
    "SequenceStats",
    "RegimeTag",
    "Regime",
    "GmBounds",
    "Kind",
    "ExtremalSequence",
    "stats_of",
    "classify",
    "product_bounds",
    "geometric_mean_bounds",
    "extremal_sequence",
    "am_gm_gap_bound",
]


@dataclass(frozen=True)
class StatProfile:
    """Length, mean and population standard deviation of a sequence."""

    n: int
    mu: float
    sigma: float

    def __post_init__(self) -> None:
        if isinstance(self.n, bool) or int(self.n) != self.n:
            raise InvalidProfile(f"n must be an integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "mu", float(self.mu))
        object.__setattr__(self, "sigma", float(self.sigma))
        if self.n < 2:
            raise InvalidProfile(f"n must be >= 2, got {self.n}")
        if not math.isfinite(self.mu) or self.mu <= 0.0:
            raise InvalidProfile(f"mu must be finite and > 0, got {self.mu!r}")
        if not math.isfinite(self.sigma) or self.sigma < 0.0:
            raise InvalidProfile(f"sigma must be finite and >= 0, got {self.sigma!r}")

    @property
    def ratio(self) -> float:
        """Coefficient of variation sigma / mu."""
        return self.sigma / self.mu

    @property
    def variance(self) -> float:
        return self.sigma * self.sigma


class SequenceStats(NamedTuple):
    """Raw (n, mu, sigma) of a sequence; mu may be <= 0 here."""

    n: int
    mu: float
    sigma: float

    def profile(self) -> StatProfile:
        return StatProfile(self.n, self.mu, self.sigma)


def stats_of(values: Iterable[float]) -> SequenceStats:
    """Length, mean and population standard deviation (divisor n)."""
    xs = [float(v) for v in values]
    n = len(xs)
    if n < 2:
        raise InvalidLength(f"need at least 2 values, got {n}")
    mu = math.fsum(xs) / n
    var = math.fsum((x - mu) ** 2 for x in xs) / n
    return SequenceStats(n, mu, math.sqrt(var))


class RegimeTag(str, enum.Enum):
    DEGENERATE = "Degenerate"
    FORCED_POSITIVE = "ForcedPositive"
    CONDITIONAL = "Conditional"
    INFEASIBLE_POSITIVE = "InfeasiblePositive"


@dataclass(frozen=True)
class Regime:
    tag: RegimeTag
    ratio: float


def classify(profile: StatProfile) -> Regime:
    # The thresholds are compared through the very factors that appear in the
    # bounds, so a regime always agrees with the sign of the computed factor.
    s = math.sqrt(profile.n - 1)
    mu, sigma = profile.mu, profile.sigma
    if sigma == 0.0:
        tag = RegimeTag.DEGENERATE
    elif mu - sigma / s <= 0.0:
        tag = RegimeTag.INFEASIBLE_POSITIVE
    elif mu - sigma * s <= 0.0:
        tag = RegimeTag.CONDITIONAL
    else:
        tag = RegimeTag.FORCED_POSITIVE
    return Regime(tag, profile.ratio)


@dataclass(frozen=True)
class GmBounds:
    lower_product: float
    upper_product: float
    lower_log: float
    upper_log: float
    lower_attained: bool
    regime: Regime


def _upper_log(profile: StatProfile) -> float:
    s = math.sqrt(profile.n - 1)
    mu, sigma = profile.mu, profile.sigma
    return log_shifted(mu, sigma * s) + (profile.n - 1) * log_shifted(mu, -sigma / s)


def _lower_log(profile: StatProfile) -> float:
    s = math.sqrt(profile.n - 1)
    mu, sigma = profile.mu, profile.sigma
    return log_shifted(mu, -sigma * s) + (profile.n - 1) * log_shifted(mu, sigma / s)


def product_bounds(profile: StatProfile) -> GmBounds:
    """Best-possible lower and upper bounds on the product of the terms."""
    regime = classify(profile)
    if regime.tag is RegimeTag.INFEASIBLE_POSITIVE:
        raise NoPositiveSequence(
            f"sigma/mu = {regime.ratio:.17g} >= sqrt(n-1) = {math.sqrt(profile.n - 1):.17g}"
        )
    upper_log = _upper_log(profile)
    attained = regime.tag in (RegimeTag.DEGENERATE, RegimeTag.FORCED_POSITIVE)
    lower_log = -math.inf
    if attained:
        # at t ~ 0 the two logs agree to the last ulp and rounding may invert them
        lower_log = min(_lower_log(profile), upper_log)
    return GmBounds(
        lower_product=safe_exp(lower_log),
        upper_product=safe_exp(upper_log),
        lower_log=lower_log,
        upper_log=upper_log,
        lower_attained=attained,
        regime=regime,
    )


def geometric_mean_bounds(profile: StatProfile) -> tuple[float, float]:
    b = product_bounds(profile)
    n = profile.n
    return safe_exp(b.lower_log / n), safe_exp(b.upper_log / n)


class Kind(str, enum.Enum):
    UPPER = "UpperAttaining"
    LOWER = "LowerAttaining"


@dataclass(frozen=True)
class ExtremalSequence:
    """``repeated_count`` copies of ``repeated_value`` plus one outlier."""

    repeated_value: float
    repeated_count: int
    outlier_value: float
    kind: Kind

    @property
    def n(self) -> int:
        return self.repeated_count + 1

    def expand(self) -> list[float]:
        return [self.repeated_value] * self.repeated_count + [self.outlier_value]

    def log_product(self) -> float:
        return self.repeated_count * math.log(self.repeated_value) + math.log(self.outlier_value)


def extremal_sequence(profile: StatProfile, kind: Kind | str) -> ExtremalSequence:
    kind = Kind(kind)
    regime = classify(profile)
    if regime.tag is RegimeTag.INFEASIBLE_POSITIVE:
        raise NoPositiveSequence("no positive sequence has this profile")
    if kind is Kind.LOWER and regime.tag is RegimeTag.CONDITIONAL:
        raise InfimumNotAttained(
            "lower bound is the infimum 0 and is not attained by a positive sequence"
        )
    s = math.sqrt(profile.n - 1)
    mu, sigma = profile.mu, profile.sigma
    if kind is Kind.UPPER:
        repeated, outlier = mu - sigma / s, mu + sigma * s
    else:
        repeated, outlier = mu + sigma / s, mu - sigma * s
    return ExtremalSequence(repeated, profile.n - 1, outlier, kind)


def am_gm_gap_bound(profile: StatProfile) -> float:
    """Upper bound sqrt(n-1)*sigma on mean minus geometric mean."""
    return math.sqrt(profile.n - 1) * profile.sigma
