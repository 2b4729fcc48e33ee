"""Pure numpy implementation of the shell kernels (fallback backend)."""

from __future__ import annotations

import math

import numpy as np


def _scale(z: np.ndarray, radius: float) -> tuple[np.ndarray, np.ndarray]:
    d = z - z.mean(axis=1, keepdims=True)
    ss = np.einsum("ij,ij->i", d, d)
    if radius == 0.0:
        return d, np.zeros_like(ss)
    with np.errstate(divide="ignore"):
        scale = np.where(ss > 0.0, radius / np.sqrt(ss), 0.0)
    return d, scale


def shell_project(z: np.ndarray, mu: float, radius: float) -> np.ndarray:
    d, scale = _scale(np.asarray(z, dtype=np.float64), radius)
    return mu + d * scale[:, None]


def shell_extrema(
    z: np.ndarray, mu: float, radius: float, lo: float, hi: float
) -> tuple[int, float, float, int]:
    x = shell_project(z, mu, radius)
    positive = (x > 0.0).all(axis=1)
    count = int(positive.sum())
    if count == 0:
        return 0, math.inf, -math.inf, 0
    logs = np.log(x[positive]).sum(axis=1)
    violations = int(((logs < lo) | (logs > hi)).sum())
    return count, float(logs.min()), float(logs.max()), violations
