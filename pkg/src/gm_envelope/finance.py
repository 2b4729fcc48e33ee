"""Terminal-wealth envelopes for a sequence of per-period returns.

A dollar invested over ``n`` periods with returns ``r_i > -1`` grows to
``X_n = prod(1 + r_i)``.  The growth factors ``1 + r_i`` are positive with
mean ``1 + mu_n`` and the same standard deviation ``sigma_n`` as the returns,
so the sharp product bounds give an envelope for ``X_n`` from
``(n, mu_n, sigma_n)`` alone.

Statistics use the population variance (divisor ``n``).  The bounds are
stated for that statistic only; a sample variance (divisor ``n - 1``) would
produce a different, unsupported envelope, so no such mode is offered.
"""

from __future__ import annotations

import csv
import io
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from typing import BinaryIO, TextIO

from ._numeric import safe_exp
from .bounds import RegimeTag, StatProfile, product_bounds, stats_of
from .errors import (
    ImpossibleReturn,
    InvalidLength,
    InvalidRobustParams,
    NoPositiveSequence,
    ParseError,
)

__all__ = [
    "ReturnSeries",
    "WealthEnvelope",
    "RobustParams",
    "ingest_csv",
    "wealth_envelope",
    "envelope_from_params",
    "robust_relative_upper",
    "robust_log_relative_upper",
    "robust_sweep",
    "ENVELOPE_LOG_TOL",
]

ENVELOPE_LOG_TOL = 1e-9


@dataclass(frozen=True)
class ReturnSeries:
    returns: tuple[float, ...]
    period_label: str = ""
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        rs = tuple(float(r) for r in self.returns)
        object.__setattr__(self, "returns", rs)
        if len(rs) < 2:
            raise InvalidLength(f"need at least 2 returns, got {len(rs)}")
        for k, r in enumerate(rs, 1):
            if not r > -1.0:
                raise ImpossibleReturn(f"return {r!r} <= -1", line=k)

    def __len__(self) -> int:
        return len(self.returns)


@dataclass(frozen=True)
class WealthEnvelope:
    n: int
    mu: float
    sigma: float
    lower_x: float
    upper_x: float
    lower_log: float
    upper_log: float
    regime: str
    actual_x: float | None = None
    actual_log: float | None = None

    def contains_actual(self, tol: float = ENVELOPE_LOG_TOL) -> bool:
        if self.actual_log is None:
            raise ValueError("envelope was built without a realized series")
        return self.lower_log - tol <= self.actual_log <= self.upper_log + tol

    def as_record(self) -> dict:
        rec = {
            "n": self.n,
            "mu": self.mu,
            "sigma": self.sigma,
            "lower_x": self.lower_x,
            "upper_x": self.upper_x,
            "lower_log": self.lower_log,
            "upper_log": self.upper_log,
        }
        if self.actual_x is not None:
            rec["actual_x"] = self.actual_x
        rec["regime"] = self.regime
        return rec


def _parse_float(text: str, line: int) -> float:
    # U+2212 MINUS SIGN shows up in copied tables
    cleaned = text.strip().replace("−", "-")
    try:
        value = float(cleaned)
    except ValueError:
        raise ParseError(f"not a number: {text.strip()!r}", line=line) from None
    if not math.isfinite(value):
        raise ParseError(f"not a finite number: {text.strip()!r}", line=line)
    return value


def _is_number(text: str) -> bool:
    try:
        _parse_float(text, 0)
    except ParseError:
        return False
    return True


def ingest_csv(source: BinaryIO | TextIO | bytes | str, period_label: str = "") -> ReturnSeries:
    """Read returns from CSV text.

    Accepted layouts: one numeric column without header, or ``label,return``
    rows where a first line whose return field is not numeric is a header.
    Blank lines are skipped.  Line numbers in errors are 1-based physical
    lines of the input.
    """
    if isinstance(source, bytes):
        text = source.decode("utf-8")
    elif isinstance(source, str):
        text = source
    else:
        raw = source.read()
        text = raw.decode("utf-8") if isinstance(raw, bytes) else raw
    text = text.lstrip("﻿")

    returns: list[float] = []
    labels: list[str] = []
    width = None
    reader = csv.reader(io.StringIO(text))
    for row in reader:
        line_no = reader.line_num
        if not row or all(not f.strip() for f in row):
            continue
        if width is None:
            width = len(row)
            if width not in (1, 2):
                raise ParseError(f"expected 1 or 2 columns, got {width}", line=line_no)
            if width == 2 and not _is_number(row[1]):
                continue
        if len(row) != width:
            raise ParseError(f"expected {width} columns, got {len(row)}", line=line_no)
        r = _parse_float(row[-1], line_no)
        if not r > -1.0:
            raise ImpossibleReturn(f"return {r!r} <= -1", line=line_no)
        returns.append(r)
        if width == 2:
            labels.append(row[0].strip())
    if len(returns) < 2:
        raise InvalidLength(f"need at least 2 returns, got {len(returns)}")
    return ReturnSeries(tuple(returns), period_label, tuple(labels) if labels else None)


def _envelope(profile: StatProfile, actual_log: float | None = None) -> WealthEnvelope:
    b = product_bounds(profile)
    return WealthEnvelope(
        n=profile.n,
        mu=profile.mu,
        sigma=profile.sigma,
        lower_x=b.lower_product,
        upper_x=b.upper_product,
        lower_log=b.lower_log,
        upper_log=b.upper_log,
        regime=b.regime.tag.value,
        actual_x=None if actual_log is None else safe_exp(actual_log),
        actual_log=actual_log,
    )


def wealth_envelope(series: ReturnSeries | Sequence[float]) -> WealthEnvelope:
    """Envelope of terminal wealth from the series' own mean and deviation,
    together with the realized wealth."""
    if not isinstance(series, ReturnSeries):
        series = ReturnSeries(tuple(series))
    rs = series.returns
    stats = stats_of(rs)
    profile = StatProfile(stats.n, 1.0 + stats.mu, stats.sigma)
    actual_log = math.fsum(math.log1p(r) for r in rs)
    env = _envelope(profile, actual_log)
    # growth factors are positive, so an infeasible profile is impossible
    assert env.regime != RegimeTag.INFEASIBLE_POSITIVE.value
    return env


def envelope_from_params(n: int, mu_n: float, sigma_n: float) -> WealthEnvelope:
    """Envelope for ``n`` periods with mean return ``mu_n`` and deviation ``sigma_n``."""
    if not 1.0 + mu_n > 0.0:
        raise NoPositiveSequence(f"mean growth factor 1 + mu_n = {1.0 + mu_n!r} is not positive")
    return _envelope(StatProfile(n, 1.0 + mu_n, sigma_n))


@dataclass(frozen=True)
class RobustParams:
    """Estimated growth-factor mean ``growth_mean`` (that is, 1 + mean return),
    estimated deviation ``sigma0`` and uncertainty radius ``epsilon``.

    Historical estimates are sometimes quoted as a mean growth factor (1.0003)
    and sometimes as a mean return (0.0003); use :meth:`from_mean_return` for
    the latter so the two are never confused.
    """

    growth_mean: float
    sigma0: float
    epsilon: float

    @classmethod
    def from_mean_return(cls, mean_return: float, sigma0: float, epsilon: float) -> "RobustParams":
        return cls(1.0 + mean_return, sigma0, epsilon)

    @property
    def mean_return(self) -> float:
        return self.growth_mean - 1.0

    @property
    def decays(self) -> bool:
        """Whether the envelope tends to 0 as n grows."""
        return self.sigma0 - self.epsilon > 0.0 and self.growth_mean - self.epsilon > 0.0


def robust_log_relative_upper(params: RobustParams, n: int) -> float:
    """Log of the upper bound on X_n / (1 + mu_n)**n when the realized mean and
    deviation are within ``epsilon`` of the estimates."""
    g, s0, eps = params.growth_mean, params.sigma0, params.epsilon
    if isinstance(n, bool) or int(n) != n or n < 2:
        raise InvalidRobustParams(f"n must be an integer >= 2, got {n!r}")
    if not eps > 0.0:
        raise InvalidRobustParams(f"epsilon must be > 0, got {eps!r}")
    if not (g + eps > 0.0 and g - eps > 0.0):
        raise InvalidRobustParams("growth_mean - epsilon must be > 0")
    if not s0 - eps >= 0.0:
        raise InvalidRobustParams("sigma0 - epsilon must be >= 0")
    root = math.sqrt(n - 1)
    shrink = (s0 - eps) / ((g + eps) * root)
    if not shrink < 1.0:
        raise InvalidRobustParams(f"second factor 1 - {shrink!r} is not positive")
    return math.log1p((s0 + eps) * root / (g - eps)) + (n - 1) * math.log1p(-shrink)


def robust_relative_upper(params: RobustParams, n: int) -> float:
    return safe_exp(robust_log_relative_upper(params, n))


def robust_sweep(params: RobustParams, ns: Iterable[int]) -> list[tuple[int, float, float]]:
    """(n, log value, value) for each n."""
    out = []
    for n in ns:
        log_v = robust_log_relative_upper(params, n)
        out.append((n, log_v, safe_exp(log_v)))
    return out
