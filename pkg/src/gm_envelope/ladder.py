"""Critical values of the product on the fixed mean/variance shell.

Every constrained critical point of ``x_1 ... x_n`` on the set of sequences
with mean ``mu`` and variance ``sigma**2`` (away from points with two or more
zero coordinates) takes exactly two values: a high value ``a`` repeated ``i``
times and a low value ``b`` repeated ``j = n - i`` times, where

    a = mu + sigma*sqrt(j/i),    b = mu - sigma*sqrt(i/j).

The critical value of type ``i`` is ``a**i * b**j``.  Normalising by
``mu**n`` gives a polynomial ``P_i(t)`` in ``t = sigma/mu`` only, and for
``t < 1/sqrt(n-1)`` these are strictly ordered ``P_1 > P_2 > ... > P_{n-1}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._numeric import log_shifted, signed_exp
from .bounds import StatProfile
from .errors import DegenerateLadder, InvalidTypeIndex, LadderOrderingError, OutOfDomain

__all__ = [
    "CriticalPoint",
    "LadderEntry",
    "CriticalLadder",
    "critical_point",
    "critical_log_value",
    "critical_value",
    "normalized_P",
    "log_normalized_P",
    "logP_derivative",
    "build_ladder",
    "type_gap",
]


def _check_index(i: int, n: int) -> None:
    if not 1 <= i <= n - 1:
        raise InvalidTypeIndex(f"type index must be in 1..{n - 1}, got {i}")


@dataclass(frozen=True)
class CriticalPoint:
    i: int
    j: int
    a: float
    b: float
    multiplicity: int

    def expand(self) -> list[float]:
        return [self.a] * self.i + [self.b] * self.j

    @property
    def positive(self) -> bool:
        return self.b > 0.0


def critical_point(i: int, profile: StatProfile) -> CriticalPoint:
    n = profile.n
    _check_index(i, n)
    j = n - i
    a = profile.mu + profile.sigma * math.sqrt(j / i)
    b = profile.mu - profile.sigma * math.sqrt(i / j)
    return CriticalPoint(i, j, a, b, math.comb(n, i))


def critical_log_value(i: int, profile: StatProfile) -> tuple[int, float]:
    """(sign, log|G|) of the type-``i`` critical value; sign is 0 when b = 0."""
    n = profile.n
    _check_index(i, n)
    j = n - i
    mu, sigma = profile.mu, profile.sigma
    log_a = i * log_shifted(mu, sigma * math.sqrt(j / i))
    b_shift = -sigma * math.sqrt(i / j)
    b = mu + b_shift
    if b > 0.0:
        return 1, log_a + j * log_shifted(mu, b_shift)
    if b == 0.0:
        return 0, -math.inf
    return (-1) ** j, log_a + j * math.log(-b)


def critical_value(i: int, profile: StatProfile) -> float:
    sign, log_abs = critical_log_value(i, profile)
    return signed_exp(sign, log_abs)


def _radicals(i: int, n: int) -> tuple[float, float]:
    j = n - i
    return math.sqrt(j / i), math.sqrt(i / j)


def log_normalized_P(i: int, n: int, t: float) -> tuple[int, float]:
    """(sign, log|P_i(t)|)."""
    _check_index(i, n)
    if t < 0.0:
        raise OutOfDomain(f"t must be >= 0, got {t}")
    j = n - i
    up, down = _radicals(i, n)
    low = 1.0 - t * down
    head = i * math.log1p(t * up)
    if low > 0.0:
        return 1, head + j * math.log1p(-t * down)
    if low == 0.0:
        return 0, -math.inf
    return (-1) ** j, head + j * math.log(-low)


def normalized_P(i: int, n: int, t: float) -> float:
    """P_i(t) = (1 + t*sqrt(j/i))**i * (1 - t*sqrt(i/j))**j with j = n - i."""
    return signed_exp(*log_normalized_P(i, n, t))


def logP_derivative(i: int, n: int, t: float) -> float:
    """d/dt log P_i(t) = -n t / ((1 + t sqrt(j/i)) (1 - t sqrt(i/j)))."""
    _check_index(i, n)
    up, down = _radicals(i, n)
    if not 0.0 <= t < up:
        raise OutOfDomain(f"t must lie in [0, {up!r}), got {t!r}")
    if t == 0.0:
        return 0.0
    denom = (1.0 + t * up) * (1.0 - t * down)
    if denom <= 0.0:
        return -math.inf
    return -n * t / denom


def type_gap(i: float, n: float) -> float:
    """(n - 2i) / sqrt(i (n - i)), strictly decreasing in i on (0, n)."""
    return (n - 2 * i) / math.sqrt(i * (n - i))


@dataclass(frozen=True)
class LadderEntry:
    i: int
    sign: int
    log_abs: float
    value: float
    normalized: float
    positive: bool


@dataclass(frozen=True)
class CriticalLadder:
    profile: StatProfile
    entries: tuple[LadderEntry, ...]
    ordered: bool

    @property
    def values(self) -> list[float]:
        return [e.value for e in self.entries]

    @property
    def normalized(self) -> list[float]:
        return [e.normalized for e in self.entries]


def build_ladder(profile: StatProfile) -> CriticalLadder:
    """All ``n - 1`` critical values, verified ordered where that is proven.

    Entries whose low value is not positive are kept (sign-correct) and
    flagged ``positive=False``.  The ordering claim is made, and checked,
    only for ``sigma/mu < 1/sqrt(n-1)``.
    """
    if profile.sigma == 0.0:
        raise DegenerateLadder("sigma = 0: the only critical point is (mu, ..., mu)")
    n, t = profile.n, profile.ratio
    entries = []
    log_p = []
    for i in range(1, n):
        sign, log_abs = critical_log_value(i, profile)
        p_sign, p_log = log_normalized_P(i, n, t)
        log_p.append(p_log)
        entries.append(
            LadderEntry(
                i=i,
                sign=sign,
                log_abs=log_abs,
                value=signed_exp(sign, log_abs),
                normalized=signed_exp(p_sign, p_log),
                positive=critical_point(i, profile).positive,
            )
        )
    ordered = profile.mu - profile.sigma * math.sqrt(n - 1) > 0.0
    if ordered:
        for k in range(len(log_p) - 1):
            hi, lo = log_p[k], log_p[k + 1]
            # inversions below log-space rounding resolution are not violations
            if lo > hi + 4 * math.ulp(max(abs(hi), abs(lo))):
                raise LadderOrderingError(
                    f"P_{k + 2}(t) >= P_{k + 1}(t) at t={t!r} (n={n}); log values {lo!r} >= {hi!r}"
                )
    return CriticalLadder(profile, tuple(entries), ordered)
