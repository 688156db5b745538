"""Two-map iterated function systems and their attractors."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple, Union

import numpy as np

from .errors import InvalidArgumentError
from .numerics import (
    RationalAngle,
    angle_new,
    check_contraction,
    unit_value,
)
from .pointset import CaseId, CloudMeta, PointCloud, canonicalize

logger = logging.getLogger(__name__)

ArrayOrScalar = Union[complex, np.ndarray]


@dataclass(frozen=True)
class ConjSimilarityMap:
    """``z -> scale*z + translate`` or, with ``conj``, of conj(z)."""

    scale: complex
    translate: complex = 0j
    conj: bool = False

    def __post_init__(self):
        object.__setattr__(
            self, "scale", check_contraction(self.scale, "scale")
        )
        object.__setattr__(self, "translate", complex(self.translate))

    def __call__(self, z: ArrayOrScalar) -> ArrayOrScalar:
        return apply(self, z)


def apply(m: ConjSimilarityMap, z: ArrayOrScalar) -> ArrayOrScalar:
    source = z.conjugate() if m.conj else z
    return m.scale * source + m.translate


def fixed_point(m: ConjSimilarityMap) -> complex:
    """The unique point with ``m(z) == z``."""
    if not m.conj:
        return m.translate / (1 - m.scale)
    # x = a x + b y + u, y = b x - a y + v
    a, b = m.scale.real, m.scale.imag
    u, v = m.translate.real, m.translate.imag
    det = 1.0 - a * a - b * b
    return complex(
        (u * (1 + a) + b * v) / det,
        (v * (1 - a) + b * u) / det,
    )


@dataclass(frozen=True)
class IfsPair:
    """Two contractions plus the parameters they were built from."""

    m1: ConjSimilarityMap
    m2: ConjSimilarityMap
    name: str = "custom"
    alpha: Optional[complex] = None
    angle: Optional[RationalAngle] = None

    @property
    def maps(self) -> Tuple[ConjSimilarityMap, ConjSimilarityMap]:
        return (self.m1, self.m2)

    @property
    def ratio(self) -> float:
        return max(abs(self.m1.scale), abs(self.m2.scale))

    @property
    def radius(self) -> float:
        """Radius of a disc about 0 mapped into itself."""
        reach = max(abs(self.m1.translate), abs(self.m2.translate))
        return reach / (1.0 - self.ratio)

    def meta(self) -> CloudMeta:
        return CloudMeta(
            source=self.name, alpha=self.alpha, angle=self.angle
        )


def ifs_for_case(
    case: CaseId, alpha: complex, angle: RationalAngle
) -> IfsPair:
    """The IFS whose attractor is the case's first-digit-one set."""
    alpha = check_contraction(alpha)
    turned = alpha * unit_value(1, angle)
    conj1 = case is CaseId.CASE2
    conj2 = case is not CaseId.CASE1
    return IfsPair(
        ConjSimilarityMap(alpha, 0j, conj1),
        ConjSimilarityMap(turned, alpha, conj2),
        name=f"case{int(case)}",
        alpha=alpha,
        angle=angle,
    )


class Preset(str, Enum):
    LEVY = "levy"
    DRAGON_TILE = "dragon_tile"
    KIKO_PAIR = "kiko_pair"


def preset(
    name: Union[Preset, str],
    alpha: Optional[complex] = None,
    gamma: Optional[complex] = None,
) -> IfsPair:
    """Classical pairs: Levy's curve, the dragon tile, kiko maps."""
    key = Preset(str(getattr(name, "value", name)).replace("-", "_"))
    if key is Preset.LEVY:
        return IfsPair(
            ConjSimilarityMap((1 + 1j) / 2),
            ConjSimilarityMap((1 - 1j) / 2, (1 + 1j) / 2),
            name=key.value,
        )
    if key is Preset.DRAGON_TILE:
        pair = ifs_for_case(CaseId.CASE1, (1 - 1j) / 2, angle_new(-1, 4))
        return IfsPair(
            pair.m1, pair.m2, key.value, pair.alpha, pair.angle
        )
    if alpha is None or gamma is None:
        raise InvalidArgumentError("kiko_pair needs alpha and gamma")
    alpha = check_contraction(alpha, "alpha")
    gamma = check_contraction(gamma, "gamma")
    return IfsPair(
        ConjSimilarityMap(alpha),
        ConjSimilarityMap(gamma, 1 - gamma),
        name=key.value,
    )


def _images(ifs: IfsPair, points: np.ndarray) -> np.ndarray:
    return np.concatenate([ifs.m1(points), ifs.m2(points)])


def hutchinson_step(ifs: IfsPair, c: PointCloud) -> PointCloud:
    """Union of the images of ``c`` under both maps."""
    return PointCloud(
        canonicalize(_images(ifs, c.points)),
        c.depth + 1,
        ifs.ratio * c.tail_bound,
        c.meta,
    )


def word_points(
    ifs: IfsPair, depth: int, seed: complex = 0j
) -> PointCloud:
    """Images of ``seed`` under every length-``depth`` map word."""
    if depth < 0:
        raise InvalidArgumentError(f"depth must be >= 0, got {depth}")
    seed = complex(seed)
    cloud = PointCloud.from_points(
        [seed],
        0,
        abs(seed) + ifs.radius,
        ifs.meta(),
    )
    for _ in range(depth):
        cloud = hutchinson_step(ifs, cloud)
    logger.debug(
        "%s words depth=%d -> %d points",
        ifs.name,
        depth,
        len(cloud),
    )
    return cloud


def chaos_game(
    ifs: IfsPair,
    n_points: int,
    seed: int = 0,
    burn_in: int = 16,
    chains: int = 256,
) -> PointCloud:
    """Random-iteration preview of the attractor.

    Chains start on the fixed point of the first map, which already
    lies on the attractor, and run side by side as numpy vectors.
    """
    if n_points < 1:
        raise InvalidArgumentError("n_points must be >= 1")
    rng = np.random.default_rng(seed)
    chains = max(1, min(chains, n_points))
    steps = -(-n_points // chains)
    z = np.full(chains, fixed_point(ifs.m1), dtype=np.complex128)
    for _ in range(burn_in):
        pick = rng.integers(0, 2, size=chains).astype(bool)
        z = np.where(pick, ifs.m2(z), ifs.m1(z))
    samples = []
    for _ in range(steps):
        pick = rng.integers(0, 2, size=chains).astype(bool)
        z = np.where(pick, ifs.m2(z), ifs.m1(z))
        samples.append(z)
    points = np.concatenate(samples)[:n_points]
    meta = ifs.meta().with_extra("chaos_seed", str(seed))
    return PointCloud.from_points(points, 0, 0.0, meta)
