"""Bounded solution of the two-branch functional equation.

    f(x) = alpha * f(2x)                          for 0 <= x < 1/2
    f(x) = gamma * f(2x - 1) + (1 - gamma)        for 1/2 <= x <= 1

The solution is evaluated by unfolding the recursion along the binary
expansion of ``x`` and truncating the remainder to f(0) = 0. Reaching
``x == 1`` exactly uses the fixed point f(1) = 1 instead.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import InvalidArgumentError
from .numerics import check_contraction, format_complex
from .pointset import CloudMeta, PointCloud

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class KikoParams:
    alpha: complex
    gamma: complex

    def __post_init__(self):
        object.__setattr__(
            self, "alpha", check_contraction(self.alpha, "alpha")
        )
        object.__setattr__(
            self, "gamma", check_contraction(self.gamma, "gamma")
        )

    @property
    def ratio(self) -> float:
        return max(abs(self.alpha), abs(self.gamma))

    @property
    def bound(self) -> float:
        """Sup-norm bound |1 - gamma| / (1 - r) on the solution."""
        return abs(1 - self.gamma) / (1.0 - self.ratio)


def _check_x(x: float) -> float:
    x = float(x)
    if not (math.isfinite(x) and 0.0 <= x <= 1.0):
        raise InvalidArgumentError(f"x must lie in [0, 1], got {x}")
    return x


def _check_depth(depth: int) -> int:
    if depth < 0:
        raise InvalidArgumentError(f"depth must be >= 0, got {depth}")
    return depth


def eval_kiko(p: KikoParams, x: float, depth: int) -> complex:
    """Depth-``depth`` approximation of f(x); exact at dyadic x."""
    x = _check_x(x)
    _check_depth(depth)
    shift = 1 - p.gamma
    acc, coef = 0j, 1 + 0j
    for level in range(depth + 1):
        if x == 0.0:
            return acc
        if x == 1.0:
            return acc + coef
        if level == depth:
            break
        if x < 0.5:
            coef *= p.alpha
            x = 2.0 * x
        else:
            acc += coef * shift
            coef *= p.gamma
            x = 2.0 * x - 1.0
    return acc


def eval_kiko_many(
    p: KikoParams, xs: Union[np.ndarray, list], depth: int
) -> np.ndarray:
    """Vectorized :func:`eval_kiko` over an array of sample points."""
    x = np.array(xs, dtype=np.float64).ravel()
    if x.size and not (
        np.all(np.isfinite(x)) and x.min() >= 0.0 and x.max() <= 1.0
    ):
        raise InvalidArgumentError("x must lie in [0, 1]")
    _check_depth(depth)
    shift = 1 - p.gamma
    acc = np.zeros(x.size, dtype=np.complex128)
    coef = np.ones(x.size, dtype=np.complex128)
    active = np.ones(x.size, dtype=bool)
    for level in range(depth + 1):
        at_one = active & (x == 1.0)
        acc[at_one] += coef[at_one]
        active &= ~at_one & (x != 0.0)
        if level == depth or not active.any():
            break
        low = active & (x < 0.5)
        high = active & (x >= 0.5)
        coef[low] *= p.alpha
        x[low] *= 2.0
        acc[high] += coef[high] * shift
        coef[high] *= p.gamma
        x[high] = 2.0 * x[high] - 1.0
    return acc


def kiko_error_bound(p: KikoParams, depth: int) -> float:
    """M * r**depth, the truncation error of :func:`eval_kiko`."""
    return p.bound * p.ratio ** _check_depth(depth)


def kiko_residual(p: KikoParams, x: float, depth: int) -> complex:
    """Equation residual with both sides unfolded to ``depth``.

    Zero up to rounding when ``x`` has at most ``depth`` binary
    digits; otherwise bounded by (1 + r) * kiko_error_bound.
    """
    x = _check_x(x)
    left = eval_kiko(p, x, depth)
    if x < 0.5:
        return left - p.alpha * eval_kiko(p, 2.0 * x, depth)
    right = p.gamma * eval_kiko(p, 2.0 * x - 1.0, depth)
    return left - right - (1 - p.gamma)


def dyadic_samples(samples: int) -> np.ndarray:
    """``samples`` points k / 2**b from 0, with 2**b >= samples - 1."""
    if samples < 1:
        raise InvalidArgumentError(
            f"samples must be >= 1, got {samples}"
        )
    bits = (samples - 2).bit_length() if samples > 1 else 0
    return np.arange(samples, dtype=np.float64) / 2.0**bits


def kiko_image_cloud(p: KikoParams, d: int) -> PointCloud:
    """f at every dyadic k / 2**d, evaluated exactly."""
    _check_depth(d)
    xs = np.arange(2**d + 1, dtype=np.float64) / 2.0**d
    values = eval_kiko_many(p, xs, d)
    meta = CloudMeta(source="kiko", alpha=p.alpha).with_extra(
        "gamma", format_complex(p.gamma)
    )
    cloud = PointCloud.from_points(
        values, d, kiko_error_bound(p, d), meta
    )
    logger.debug("kiko d=%d -> %d points", d, len(cloud))
    return cloud
