"""Point clouds to grayscale images, plus the bundled figure presets."""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Dict, Optional, Tuple, Union

import numpy as np
from PIL import Image

from .errors import InvalidArgumentError
from .ifs import Preset, ifs_for_case, preset, word_points
from .numerics import RationalAngle, angle_new
from .pointset import CaseId, PointCloud, Subset, build_cloud

logger = logging.getLogger(__name__)

HIT = 0
BACKGROUND = 255


@dataclass(frozen=True)
class Bounds:
    """Rectangle [x0, x1] x [y0, y1] in the complex plane."""

    x0: float
    x1: float
    y0: float
    y1: float

    def __post_init__(self):
        values = (self.x0, self.x1, self.y0, self.y1)
        if not all(math.isfinite(v) for v in values):
            raise InvalidArgumentError("bounds must be finite")
        if not (self.x1 > self.x0 and self.y1 > self.y0):
            raise InvalidArgumentError(
                f"degenerate bounds {values}"
            )

    @classmethod
    def parse(cls, text: str) -> "Bounds":
        """Parse "X0,X1,Y0,Y1"."""
        try:
            x0, x1, y0, y1 = (float(v) for v in text.split(","))
        except ValueError as exc:
            raise InvalidArgumentError(
                f"bounds must look like X0,X1,Y0,Y1, got {text!r}"
            ) from exc
        return cls(x0, x1, y0, y1)


@dataclass(frozen=True)
class RasterConfig:
    width: int = 512
    height: int = 512
    bounds: Optional[Bounds] = None
    padding: float = 0.05
    invert: bool = False

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise InvalidArgumentError(
                f"image size must be >= 1, got "
                f"{self.width}x{self.height}"
            )
        if self.padding < 0:
            raise InvalidArgumentError("padding must be >= 0")


def _points(c: Union[PointCloud, np.ndarray]) -> np.ndarray:
    if isinstance(c, PointCloud):
        return c.points
    return np.asarray(c, dtype=np.complex128).ravel()


def auto_bounds(
    c: Union[PointCloud, np.ndarray], padding: float = 0.05
) -> Bounds:
    """Bounding box grown by ``padding`` of its span on every side."""
    pts = _points(c)
    if pts.size == 0:
        raise InvalidArgumentError(
            "cannot size an image around an empty cloud"
        )

    def padded(lo: float, hi: float) -> Tuple[float, float]:
        span = hi - lo
        if span <= 0:
            span = max(1.0, abs(lo))
            return lo - span / 2, hi + span / 2
        return lo - padding * span, hi + padding * span

    x0, x1 = padded(float(pts.real.min()), float(pts.real.max()))
    y0, y1 = padded(float(pts.imag.min()), float(pts.imag.max()))
    return Bounds(x0, x1, y0, y1)


def _mark(
    hits: np.ndarray,
    pts: np.ndarray,
    bounds: Bounds,
    width: int,
    height: int,
):
    dx = (bounds.x1 - bounds.x0) / width
    dy = (bounds.y1 - bounds.y0) / height
    inside = (
        (pts.real >= bounds.x0)
        & (pts.real <= bounds.x1)
        & (pts.imag >= bounds.y0)
        & (pts.imag <= bounds.y1)
    )
    pts = pts[inside]
    cols = np.floor((pts.real - bounds.x0) / dx).astype(np.int64)
    rows = np.floor((bounds.y1 - pts.imag) / dy).astype(np.int64)
    np.clip(cols, 0, width - 1, out=cols)
    np.clip(rows, 0, height - 1, out=rows)
    hits[rows, cols] = True


def rasterize(
    c: Union[PointCloud, np.ndarray],
    cfg: RasterConfig,
    threads: int = 1,
) -> np.ndarray:
    """Grayscale ``(height, width)`` uint8 image of the cloud.

    Row 0 is the top edge (largest imaginary part). Points outside
    explicit bounds are dropped; points on the right or top edge land
    in the last column or first row.
    """
    pts = _points(c)
    bounds = cfg.bounds or auto_bounds(pts, cfg.padding)
    hits = np.zeros((cfg.height, cfg.width), dtype=bool)
    threads = max(1, int(threads))
    if threads == 1 or pts.size < 4096:
        _mark(hits, pts, bounds, cfg.width, cfg.height)
    else:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            futures = [
                executor.submit(
                    _mark,
                    hits,
                    chunk,
                    bounds,
                    cfg.width,
                    cfg.height,
                )
                for chunk in np.array_split(pts, threads)
            ]
            for future in futures:
                future.result()
    hit, background = (
        (BACKGROUND, HIT) if cfg.invert else (HIT, BACKGROUND)
    )
    return np.where(hits, hit, background).astype(np.uint8)


def write_pgm(img: np.ndarray, target: Union[str, Path, IO[bytes]]):
    """Binary PGM (P5, maxval 255, no comments)."""
    if img.ndim != 2:
        raise InvalidArgumentError("expected a 2-D grayscale image")
    height, width = img.shape
    data = f"P5\n{width} {height}\n255\n".encode("ascii")
    data += np.ascontiguousarray(img, dtype=np.uint8).tobytes()
    if isinstance(target, (str, Path)):
        Path(target).write_bytes(data)
    else:
        target.write(data)


def write_png(img: np.ndarray, target: Union[str, Path]):
    """PNG export through Pillow; not byte-stable across versions."""
    Image.fromarray(np.ascontiguousarray(img, dtype=np.uint8)).save(
        target, format="PNG"
    )


@dataclass(frozen=True)
class FigurePreset:
    """A named cloud recipe.

    ``ifs`` set means word images of that preset (or of the case IFS
    when it is "case"); otherwise the full digit-series set.
    """

    name: str
    case: CaseId
    alpha: complex
    angle: RationalAngle
    caption: str
    ifs: Optional[str] = None

    def build(self, depth: int, threads: int = 1) -> PointCloud:
        if self.ifs is None:
            return build_cloud(
                self.case,
                self.alpha,
                self.angle,
                depth,
                Subset.FULL,
                threads,
            )
        if self.ifs == "case":
            pair = ifs_for_case(self.case, self.alpha, self.angle)
        else:
            pair = preset(self.ifs)
        return word_points(pair, depth)


_DRAGON = (1 - 1j) / 2
_ROTATED = (1 + 1j) / 2
_KOCH = complex(0.5, math.sqrt(3) / 6)
_SKEW = (2 + 1j) / 4


# name, case, alpha, turn fraction of theta
_SERIES = (
    ("fig1-left", 1, _DRAGON, -1, 4),
    ("fig1-right", 1, _DRAGON, 1, 4),
    ("fig2-left", 1, _ROTATED, 1, 20),
    ("fig2-right", 1, _DRAGON, 1, 6),
    ("fig3-top-left", 2, _KOCH, -1, 6),
    ("fig3-top-right", 2, _KOCH, 1, 6),
    ("fig3-bottom-left", 2, _KOCH, 1, 12),
    ("fig3-bottom-right", 2, _KOCH, -1, 12),
    ("fig4-top-left", 3, _ROTATED, 1, 4),
    ("fig4-top-right", 3, _ROTATED, -1, 4),
    ("fig4-bottom-left", 3, _SKEW, 1, 8),
    ("fig4-bottom-right", 3, _SKEW, -1, 8),
)


def _caption(case: int, alpha: complex, angle: RationalAngle) -> str:
    return f"case {case}, alpha={alpha:g}, theta=2pi*{angle}"


def _presets() -> Dict[str, FigurePreset]:
    figures = {}
    for name, case, alpha, num, den in _SERIES:
        angle = angle_new(num, den)
        figures[name] = FigurePreset(
            name,
            CaseId(case),
            alpha,
            angle,
            _caption(case, alpha, angle),
        )
    figures["levy-curve"] = FigurePreset(
        "levy-curve",
        CaseId.CASE1,
        _ROTATED,
        angle_new(1, 4),
        "Levy's curve",
        Preset.LEVY.value,
    )
    figures["koch-curve"] = FigurePreset(
        "koch-curve",
        CaseId.CASE2,
        _KOCH,
        angle_new(-1, 6),
        "Koch's curve",
        "case",
    )
    return figures


FIGURES: Dict[str, FigurePreset] = _presets()


def figure(name: str) -> FigurePreset:
    try:
        return FIGURES[name]
    except KeyError:
        raise InvalidArgumentError(
            f"unknown figure {name!r}; known: {', '.join(FIGURES)}"
        ) from None


def render_figure(
    name: str,
    depth: int,
    cfg: RasterConfig,
    threads: int = 1,
) -> Tuple[PointCloud, np.ndarray]:
    """Build a preset's cloud and rasterize it."""
    fig = figure(name)
    cloud = fig.build(depth, threads)
    logger.info(
        "figure %s depth=%d: %d points", name, depth, len(cloud)
    )
    return cloud, rasterize(cloud, cfg, threads)
