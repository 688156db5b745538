"""Hausdorff distance and the named set-identity checks.

Each check builds two clouds that should describe the same set and
reports their Hausdorff distance against a tolerance: 1e-9 when the
two sides match point for point, twice the tail bound when both sides
truncate an infinite object independently.
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import (
    Callable,
    Iterable,
    List,
    Optional,
    Sequence,
    Tuple,
    Union,
)

import numpy as np
from scipy.spatial import cKDTree

from .derham import (
    KikoParams,
    dyadic_samples,
    eval_kiko,
    eval_kiko_many,
    kiko_error_bound,
    kiko_image_cloud,
    kiko_residual,
)
from .dk_radix import (
    GaussianInt,
    Representation,
    UnitDigit,
    all_four,
    represent,
    value,
)
from .errors import InvalidArgumentError
from .ifs import (
    Preset,
    hutchinson_step,
    ifs_for_case,
    preset,
    word_points,
)
from .numerics import RationalAngle, angle_new, format_complex
from .pointset import (
    CaseId,
    PointCloud,
    Subset,
    build_cloud,
    conjugate_cloud,
    merge_clouds,
    rotate_cloud,
)
from .raster import FIGURES, Bounds, RasterConfig, rasterize

logger = logging.getLogger(__name__)

EXACT_TOLERANCE = 1e-9
ENDPOINT_TOLERANCE = 1e-12

CloudLike = Union[PointCloud, np.ndarray]


class Method(str, Enum):
    BRUTE = "brute"
    KDTREE = "kdtree"


@dataclass(frozen=True)
class Measurement:
    label: str
    distance: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.distance <= self.tolerance)


@dataclass(frozen=True)
class VerifyReport:
    """Outcome of one named check."""

    name: str
    params: Tuple[Tuple[str, str], ...] = ()
    measurements: Tuple[Measurement, ...] = ()
    runtime: float = 0.0

    @property
    def passed(self) -> bool:
        return all(m.passed for m in self.measurements)

    def lines(self) -> List[str]:
        """One "CHECK <name> dist= tol= PASS|FAIL" line per measure."""
        suffix = ",".join(f"{k}={v}" for k, v in self.params)
        out = []
        for m in self.measurements:
            name = self.name if not m.label else f"{self.name}/{m.label}"
            if suffix:
                name = f"{name}[{suffix}]"
            verdict = "PASS" if m.passed else "FAIL"
            out.append(
                f"CHECK {name} dist={m.distance:.3e} "
                f"tol={m.tolerance:.3e} {verdict}"
            )
        return out


@dataclass
class _Timer:
    started: float = field(default_factory=time.perf_counter)

    def elapsed(self) -> float:
        return time.perf_counter() - self.started


def _report(
    name: str,
    params: Sequence[Tuple[str, str]],
    measurements: Iterable[Measurement],
    timer: _Timer,
) -> VerifyReport:
    report = VerifyReport(
        name, tuple(params), tuple(measurements), timer.elapsed()
    )
    for line in report.lines():
        if report.passed:
            logger.info("%s (%.2fs)", line, report.runtime)
        else:
            logger.warning("%s (%.2fs)", line, report.runtime)
    return report


def _case_params(
    case: CaseId, alpha: complex, angle: RationalAngle, depth: int
) -> List[Tuple[str, str]]:
    return [
        ("case", str(int(case))),
        ("alpha", format_complex(alpha)),
        ("theta", str(angle)),
        ("depth", str(depth)),
    ]


def _as_points(c: CloudLike) -> np.ndarray:
    pts = c.points if isinstance(c, PointCloud) else c
    pts = np.asarray(pts, dtype=np.complex128).ravel()
    if pts.size == 0:
        raise InvalidArgumentError("Hausdorff distance of an empty cloud")
    return pts


def _sq_kernel(src: np.ndarray, cand: np.ndarray) -> np.ndarray:
    dx = src.real[:, None] - cand.real
    dy = src.imag[:, None] - cand.imag
    return dx * dx + dy * dy


def _directed_brute(src: np.ndarray, dst: np.ndarray) -> float:
    rows = max(1, (1 << 22) // dst.size)
    worst = 0.0
    for start in range(0, src.size, rows):
        chunk = src[start : start + rows]
        d2 = _sq_kernel(chunk, dst[None, :])
        worst = max(worst, float(d2.min(axis=1).max()))
    return worst


def _directed_kdtree(
    src: np.ndarray, dst: np.ndarray, threads: int
) -> float:
    tree = cKDTree(np.column_stack([dst.real, dst.imag]))
    k = min(4, dst.size)
    _, idx = tree.query(
        np.column_stack([src.real, src.imag]), k=k, workers=threads
    )
    idx = np.asarray(idx).reshape(src.size, k)
    # re-score candidates with the brute-force kernel
    d2 = _sq_kernel(src, dst[idx])
    return float(d2.min(axis=1).max())


def hausdorff(
    a: CloudLike,
    b: CloudLike,
    method: Union[Method, str] = Method.KDTREE,
    threads: int = 1,
) -> float:
    """Symmetric Hausdorff distance between two finite clouds."""
    pa, pb = _as_points(a), _as_points(b)
    if Method(method) is Method.BRUTE:
        worst = max(_directed_brute(pa, pb), _directed_brute(pb, pa))
    else:
        threads = max(1, int(threads))
        worst = max(
            _directed_kdtree(pa, pb, threads),
            _directed_kdtree(pb, pa, threads),
        )
    return math.sqrt(worst)


def _turn(c: PointCloud, unit: complex) -> PointCloud:
    return PointCloud.from_points(
        c.points * unit, c.depth, c.tail_bound, c.meta
    )


def check_set_equation(
    case: CaseId,
    alpha: complex,
    angle: RationalAngle,
    depth: int,
    threads: int = 1,
    tolerance: float = EXACT_TOLERANCE,
) -> VerifyReport:
    """First-digit-one cloud at n+1 against one Hutchinson step of n."""
    timer = _Timer()
    deeper = build_cloud(
        case, alpha, angle, depth + 1, Subset.FIRST_DIGIT_ONE, threads
    )
    shallow = build_cloud(
        case, alpha, angle, depth, Subset.FIRST_DIGIT_ONE, threads
    )
    stepped = hutchinson_step(
        ifs_for_case(case, alpha, angle), shallow
    )
    dist = hausdorff(deeper, stepped, threads=threads)
    return _report(
        "set_equation",
        _case_params(case, alpha, angle, depth),
        [Measurement("", dist, tolerance)],
        timer,
    )


def check_union_theorem(
    case: CaseId,
    alpha: complex,
    angle: RationalAngle,
    depth: int,
    threads: int = 1,
    tolerance: float = EXACT_TOLERANCE,
) -> VerifyReport:
    """Rotation union and series-versus-words, at the same depth."""
    timer = _Timer()
    full = build_cloud(
        case, alpha, angle, depth, Subset.FULL, threads
    )
    one = build_cloud(
        case, alpha, angle, depth, Subset.FIRST_DIGIT_ONE, threads
    )
    union = merge_clouds(
        [rotate_cloud(one, step) for step in range(angle.p)]
    )
    words = word_points(ifs_for_case(case, alpha, angle), depth)
    return _report(
        "union_theorem",
        _case_params(case, alpha, angle, depth),
        [
            Measurement(
                "rotations",
                hausdorff(full, union, threads=threads),
                tolerance,
            ),
            Measurement(
                "words",
                hausdorff(one, words, threads=threads),
                tolerance,
            ),
        ],
        timer,
    )


class Classical(str, Enum):
    MIZUTANI_ITO = "mizutani_ito"
    KAWAMURA_LEVY = "kawamura_levy"
    LEVY_CONJUGATE = "levy_conjugate"


_DRAGON_ALPHA = (1 - 1j) / 2
_QUARTER_TURNS = (1, 1j, -1, -1j)


def check_classical(
    name: Union[Classical, str],
    depth: int = 14,
    threads: int = 1,
) -> VerifyReport:
    """The three classical dragon and Levy curve identities."""
    timer = _Timer()
    which = Classical(name)
    if which is Classical.LEVY_CONJUGATE:
        left = conjugate_cloud(word_points(preset(Preset.LEVY), depth))
        right = word_points(
            ifs_for_case(CaseId.CASE1, _DRAGON_ALPHA, angle_new(1, 4)),
            depth,
        )
    else:
        if which is Classical.MIZUTANI_ITO:
            angle = angle_new(-1, 4)
            tile = word_points(preset(Preset.DRAGON_TILE), depth)
        else:
            angle = angle_new(1, 4)
            tile = conjugate_cloud(
                word_points(preset(Preset.LEVY), depth)
            )
        left = build_cloud(
            CaseId.CASE1,
            _DRAGON_ALPHA,
            angle,
            depth,
            Subset.FULL,
            threads,
        )
        right = merge_clouds([_turn(tile, u) for u in _QUARTER_TURNS])
    tolerance = 2.0 * max(left.tail_bound, right.tail_bound)
    return _report(
        which.value,
        [("depth", str(depth))],
        [
            Measurement(
                "", hausdorff(left, right, threads=threads), tolerance
            )
        ],
        timer,
    )


def estimate_overlap(
    a: CloudLike, b: CloudLike, resolution: int = 256
) -> float:
    """Fraction of A's pixels also hit by B on a shared grid.

    A heuristic only: it says nothing about the measure of the true
    intersection, though it should shrink as resolution grows for
    sets that meet in a null set.
    """
    if resolution < 16:
        raise InvalidArgumentError("resolution must be >= 16")
    pa, pb = _as_points(a), _as_points(b)
    both = np.concatenate([pa, pb])
    span = max(
        float(np.ptp(both.real)), float(np.ptp(both.imag)), 1e-12
    )
    cx = float(both.real.min() + both.real.max()) / 2
    cy = float(both.imag.min() + both.imag.max()) / 2
    half = span / 2
    cfg = RasterConfig(
        resolution,
        resolution,
        Bounds(cx - half, cx + half, cy - half, cy + half),
    )
    hit_a = rasterize(pa, cfg) == 0
    hit_b = rasterize(pb, cfg) == 0
    return float(np.count_nonzero(hit_a & hit_b)) / float(
        np.count_nonzero(hit_a)
    )


KIKO_PAIRS = (
    ((1 + 1j) / 2, (1 - 1j) / 2),
    (0.5 + 0j, 0.5 + 0j),
    (0.4 + 0.3j, 0.5 - 0.2j),
)


def check_kiko(
    params: KikoParams,
    samples: int = 1024,
    depth: int = 40,
    tolerance: float = EXACT_TOLERANCE,
    image_depth: int = 10,
) -> VerifyReport:
    """Equation residuals, endpoint values, bound and dyadic image."""
    timer = _Timer()
    xs = dyadic_samples(samples)
    residual = max(
        abs(kiko_residual(params, float(x), depth)) for x in xs
    )
    residual_tol = tolerance
    if depth < max(samples - 2, 0).bit_length():
        # grid finer than the unfolding: both sides carry truncation
        residual_tol += (1 + params.ratio) * kiko_error_bound(
            params, depth
        )
    endpoints = max(
        abs(eval_kiko(params, 0.0, depth)),
        abs(eval_kiko(params, 1.0, depth) - 1),
        abs(eval_kiko(params, 0.5, depth) - (1 - params.gamma)),
    )
    peak = float(np.abs(eval_kiko_many(params, xs, depth)).max())
    image = kiko_image_cloud(params, image_depth)
    words = word_points(
        preset(Preset.KIKO_PAIR, params.alpha, params.gamma),
        image_depth,
    )
    with_one = merge_clouds(
        [words, PointCloud.from_points([1 + 0j], 0, 0.0)]
    )
    return _report(
        "kiko",
        [
            ("alpha", format_complex(params.alpha)),
            ("gamma", format_complex(params.gamma)),
            ("depth", str(depth)),
        ],
        [
            Measurement("residual", residual, residual_tol),
            Measurement("endpoints", endpoints, ENDPOINT_TOLERANCE),
            Measurement(
                "bound", peak, params.bound + ENDPOINT_TOLERANCE
            ),
            Measurement(
                "dyadic_words",
                hausdorff(image, with_one),
                tolerance,
            ),
        ],
        timer,
    )


DK_EXAMPLE = GaussianInt(-5, 33)
DK_EXPECTED = Representation.parse("1 0 0 0 -i -1 i 1 0 -i 0")


def check_davis_knuth(
    max_steps: int = 256,
) -> VerifyReport:
    """The -5+33i example, and round trips of all four anchors."""
    timer = _Timer()
    got = represent(DK_EXAMPLE, UnitDigit.MINUS_I, max_steps)
    mismatch = 0.0 if got == DK_EXPECTED else 1.0
    reps = all_four(DK_EXAMPLE, max_steps)
    failed = sum(1 for r in reps if value(r) != DK_EXAMPLE)
    failed += 4 - len(set(reps))
    return _report(
        "davis_knuth",
        [("z", str(DK_EXAMPLE))],
        [
            Measurement("example", mismatch, 0.0),
            Measurement("four", float(failed), 0.0),
        ],
        timer,
    )


def default_suite(
    depth: int = 10,
    threads: int = 1,
    kiko_samples: int = 1024,
    kiko_depth: int = 40,
    tolerance: float = EXACT_TOLERANCE,
    figures: Optional[Sequence[str]] = None,
) -> List[Tuple[str, Callable[[], VerifyReport]]]:
    """Named zero-argument jobs that make up ``verify --all``."""
    jobs: List[Tuple[str, Callable[[], VerifyReport]]] = [
        ("davis_knuth", check_davis_knuth)
    ]
    for alpha, gamma in KIKO_PAIRS:
        params = KikoParams(alpha, gamma)
        jobs.append(
            (
                f"kiko {format_complex(alpha)}",
                lambda p=params: check_kiko(
                    p, kiko_samples, kiko_depth, tolerance
                ),
            )
        )
    for name in figures if figures is not None else FIGURES:
        fig = FIGURES[name]
        if fig.ifs is not None:
            continue
        args = (fig.case, fig.alpha, fig.angle, depth, threads)
        jobs.append(
            (
                f"set_equation {name}",
                lambda a=args: check_set_equation(*a, tolerance),
            )
        )
        jobs.append(
            (
                f"union_theorem {name}",
                lambda a=args: check_union_theorem(*a, tolerance),
            )
        )
    for which in Classical:
        jobs.append(
            (
                which.value,
                lambda w=which: check_classical(w, depth, threads),
            )
        )
    return jobs
