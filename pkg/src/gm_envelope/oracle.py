"""Brute-force corroboration of the product bounds by sampling.

Every sequence with mean ``mu`` and variance ``sigma**2`` lies on the
"shell": the intersection of the hyperplane ``sum(x) = n*mu`` with the sphere
of radius ``sigma*sqrt(n)`` around the centroid ``(mu, ..., mu)``.  Samples
are drawn isotropically on that shell, so each one satisfies the mean and
variance constraints up to rounding, and the products of the all-positive
samples are checked against the closed-form bounds.

Sampling is split into fixed-size chunks with seeds spawned from the user
seed, so results do not depend on how many worker threads process them.
"""

from __future__ import annotations

import math
import os
from collections.abc import Iterator
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels
from .bounds import RegimeTag, StatProfile, classify, product_bounds
from .errors import DegenerateLadder, InvalidProfile
from .ladder import critical_point

__all__ = [
    "CONTAINMENT_TOL",
    "ShellGeometry",
    "SampleReport",
    "shell_geometry",
    "face_centroid",
    "ray_point",
    "sample_on_shell",
    "shell_batch",
    "brute_force_extrema",
    "two_value_scan",
    "sample_positive",
    "thread_count",
]

CONTAINMENT_TOL = 1e-9
CHUNK_ELEMENTS = 1 << 18


@dataclass(frozen=True)
class ShellGeometry:
    n: int
    mu: float
    sigma: float
    shell_radius: float
    r1: float
    r2: float


def shell_geometry(profile: StatProfile) -> ShellGeometry:
    """Shell radius and the nearest/farthest boundary distances of the simplex.

    ``r1`` is the distance from the centroid to the centroid of an
    (n-2)-face, ``r2`` the distance to a vertex.
    """
    n, mu = profile.n, profile.mu
    return ShellGeometry(
        n=n,
        mu=mu,
        sigma=profile.sigma,
        shell_radius=profile.sigma * math.sqrt(n),
        r1=mu * math.sqrt(n / (n - 1)),
        r2=mu * math.sqrt(n * (n - 1)),
    )


def face_centroid(n: int, mu: float, dim: int) -> np.ndarray:
    """Centroid of the face spanned by the first ``dim + 1`` vertices of the simplex
    ``{x >= 0, sum(x) = n*mu}``."""
    if not 0 <= dim <= n - 1:
        raise InvalidProfile(f"face dimension must be in 0..{n - 1}, got {dim}")
    out = np.zeros(n)
    out[: dim + 1] = n * mu / (dim + 1)
    return out


def ray_point(profile: StatProfile, dim: int) -> np.ndarray:
    """Where the ray from the centroid towards a ``dim``-face centroid meets the shell."""
    n, mu = profile.n, profile.mu
    direction = face_centroid(n, mu, dim) - mu
    return mu + profile.sigma * math.sqrt(n) * direction / np.linalg.norm(direction)


def _chunk_plan(n: int, count: int) -> list[int]:
    rows = max(1, CHUNK_ELEMENTS // n)
    sizes = [rows] * (count // rows)
    if count % rows:
        sizes.append(count % rows)
    return sizes


def _chunk_normals(n: int, count: int, seed: int) -> Iterator[tuple[int, np.random.SeedSequence]]:
    sizes = _chunk_plan(n, count)
    children = np.random.SeedSequence(seed).spawn(len(sizes))
    return zip(sizes, children)


def _draw(n: int, rows: int, child: np.random.SeedSequence) -> np.ndarray:
    return np.random.default_rng(child).standard_normal((rows, n))


def shell_batch(profile: StatProfile, count: int, seed: int) -> np.ndarray:
    """All ``count`` shell samples as a (count, n) array."""
    radius = profile.sigma * math.sqrt(profile.n)
    parts = [
        kernels.shell_project(_draw(profile.n, rows, child), profile.mu, radius)
        for rows, child in _chunk_normals(profile.n, count, seed)
    ]
    if not parts:
        return np.empty((0, profile.n))
    return np.concatenate(parts)


def sample_on_shell(profile: StatProfile, count: int, seed: int) -> Iterator[np.ndarray]:
    """Yield ``count`` sequences with exactly the profile's mean and deviation."""
    if count < 1:
        raise ValueError("count must be >= 1")
    radius = profile.sigma * math.sqrt(profile.n)
    for rows, child in _chunk_normals(profile.n, count, seed):
        yield from kernels.shell_project(_draw(profile.n, rows, child), profile.mu, radius)


def thread_count() -> int:
    raw = os.environ.get("GM_ENVELOPE_THREADS", "0").strip() or "0"
    try:
        value = int(raw)
    except ValueError:
        value = 0
    if value <= 0:
        return os.cpu_count() or 1
    return value


@dataclass(frozen=True)
class SampleReport:
    requested: int
    all_positive_count: int
    min_product_log: float | None
    max_product_log: float | None
    containment_violations: int
    seed: int
    regime: str
    lower_log: float | None
    upper_log: float | None
    forced_positive_ok: bool | None

    @property
    def nonpositive_count(self) -> int:
        return self.requested - self.all_positive_count


def brute_force_extrema(
    profile: StatProfile, count: int, seed: int, *, threads: int | None = None
) -> SampleReport:
    """Sample the shell and compare sampled log-products with the bounds.

    For an infeasible profile there are no bounds and any positive sample
    counts as a violation.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    regime = classify(profile)
    if regime.tag is RegimeTag.INFEASIBLE_POSITIVE:
        lower_log = upper_log = None
        lo, hi = math.inf, -math.inf
    else:
        b = product_bounds(profile)
        lower_log, upper_log = b.lower_log, b.upper_log
        lo, hi = lower_log - CONTAINMENT_TOL, upper_log + CONTAINMENT_TOL

    n, mu = profile.n, profile.mu
    radius = profile.sigma * math.sqrt(n)

    def work(job: tuple[int, np.random.SeedSequence]) -> tuple[int, float, float, int]:
        rows, child = job
        return kernels.shell_extrema(_draw(n, rows, child), mu, radius, lo, hi)

    jobs = list(_chunk_normals(n, count, seed))
    workers = min(threads or thread_count(), len(jobs))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(work, jobs))
    else:
        parts = [work(job) for job in jobs]

    positive = sum(p[0] for p in parts)
    lows = [p[1] for p in parts if p[0]]
    highs = [p[2] for p in parts if p[0]]
    violations = sum(p[3] for p in parts)
    forced_ok = None
    if regime.tag is RegimeTag.FORCED_POSITIVE:
        forced_ok = positive == count
    return SampleReport(
        requested=count,
        all_positive_count=positive,
        min_product_log=min(lows) if lows else None,
        max_product_log=max(highs) if highs else None,
        containment_violations=violations,
        seed=seed,
        regime=regime.tag.value,
        lower_log=lower_log,
        upper_log=upper_log,
        forced_positive_ok=forced_ok,
    )


def two_value_scan(profile: StatProfile) -> list[tuple[int, float, bool]]:
    """Products of the expanded two-value critical sequences, by direct multiplication."""
    if profile.sigma == 0.0:
        raise DegenerateLadder("sigma = 0: the only critical point is (mu, ..., mu)")
    out = []
    for i in range(1, profile.n):
        point = critical_point(i, profile)
        out.append((i, math.prod(point.expand()), point.b > 0.0))
    return out


def sample_positive(n: int, mu: float, count: int, seed: int) -> np.ndarray:
    """Uniform draws from ``{x > 0, sum(x) = n*mu}``, shape (count, n)."""
    rng = np.random.default_rng(seed)
    e = rng.standard_exponential((count, n))
    return n * mu * e / e.sum(axis=1, keepdims=True)
