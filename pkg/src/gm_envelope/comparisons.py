"""Compare the mean-variance bounds with older bounds from the literature.

Three upper bounds on the gap between arithmetic and geometric mean of a
positive sequence are evaluated side by side:

* ``sqrt(n-1) * sigma`` (follows from the sharp lower product bound),
* ``n * sigma`` (Aldaz, equal weights and quadratic variance),
* ``sigma**2 / (2*min(x))`` (Cartwright and Field), which also gives the lower
  bound ``sigma**2 / (2*max(x))``.

No dominance between the product intervals is claimed; the Cartwright-Field
interval uses the extra information min(x), max(x).
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

from ._numeric import safe_exp
from .bounds import StatProfile, am_gm_gap_bound, product_bounds, stats_of
from .errors import InvalidLength, NonPositiveInput

__all__ = ["BoundReport", "ProductComparison", "evaluate_bounds", "product_bound_comparison"]

# Bounds are computed from (mu, sigma) alone; when mu - sigma*sqrt(n-1) suffers
# cancellation the profile carries ~1e-11 relative error into the bound.
_LOG_TOL = 1e-9


def _positive(values: Sequence[float]) -> list[float]:
    xs = [float(v) for v in values]
    if len(xs) < 2:
        raise InvalidLength(f"need at least 2 values, got {len(xs)}")
    for k, x in enumerate(xs, 1):
        if not x > 0.0:
            raise NonPositiveInput(f"value #{k} is {x!r}; all values must be > 0")
    return xs


@dataclass(frozen=True)
class BoundReport:
    sequence_profile: StatProfile
    seq_min: float
    seq_max: float
    geometric_mean: float
    gap_actual: float
    gap_corollary1: float
    gap_aldaz: float
    cf_lower: float
    cf_upper: float
    tightest_upper_on_gap: str

    def chain_holds(self, slack: float = 0.0) -> bool:
        return (
            -slack <= self.gap_actual
            and self.gap_actual <= self.gap_corollary1 + slack
            and self.gap_corollary1 <= self.gap_aldaz + slack
        )

    def sandwich_holds(self, slack: float = 0.0) -> bool:
        return self.cf_lower - slack <= self.gap_actual <= self.cf_upper + slack


def evaluate_bounds(values: Sequence[float]) -> BoundReport:
    xs = _positive(values)
    stats = stats_of(xs)
    profile = stats.profile()
    n = profile.n
    log_gm = math.fsum(math.log(x) for x in xs) / n
    gm = math.exp(log_gm)
    a, b = min(xs), max(xs)
    var = profile.variance
    uppers = {
        "corollary1": am_gm_gap_bound(profile),
        "aldaz": n * profile.sigma,
        "cartwright_field": var / (2 * a),
    }
    tightest = min(uppers, key=uppers.__getitem__)
    return BoundReport(
        sequence_profile=profile,
        seq_min=a,
        seq_max=b,
        geometric_mean=gm,
        gap_actual=profile.mu - gm,
        gap_corollary1=uppers["corollary1"],
        gap_aldaz=uppers["aldaz"],
        cf_lower=var / (2 * b),
        cf_upper=uppers["cartwright_field"],
        tightest_upper_on_gap=tightest,
    )


@dataclass(frozen=True)
class ProductComparison:
    actual_product: float
    actual_log: float
    sharp_lower: float
    sharp_upper: float
    cf_lower: float
    cf_upper: float
    in_sharp: bool
    in_cf: bool


def _within(log_x: float, lo: float, hi: float) -> bool:
    return lo - _LOG_TOL <= log_x <= hi + _LOG_TOL


def product_bound_comparison(values: Sequence[float]) -> ProductComparison:
    """Actual product against the mean-variance and Cartwright-Field intervals.

    Comparisons are made in log space.  A Cartwright-Field base
    ``mu - sigma**2/(2*min)`` that is not positive gives the trivial lower
    bound 0.
    """
    xs = _positive(values)
    profile = stats_of(xs).profile()
    n, mu, var = profile.n, profile.mu, profile.variance
    actual_log = math.fsum(math.log(x) for x in xs)
    sharp = product_bounds(profile)

    cf_lo_base = mu - var / (2 * min(xs))
    cf_hi_base = mu - var / (2 * max(xs))
    cf_lo_log = n * math.log(cf_lo_base) if cf_lo_base > 0.0 else -math.inf
    cf_hi_log = n * math.log(cf_hi_base) if cf_hi_base > 0.0 else -math.inf
    return ProductComparison(
        actual_product=safe_exp(actual_log),
        actual_log=actual_log,
        sharp_lower=sharp.lower_product,
        sharp_upper=sharp.upper_product,
        cf_lower=safe_exp(cf_lo_log),
        cf_upper=safe_exp(cf_hi_log),
        in_sharp=_within(actual_log, sharp.lower_log, sharp.upper_log),
        in_cf=_within(actual_log, cf_lo_log, cf_hi_log),
    )
