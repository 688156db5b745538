"""Weighted digit series and the point clouds they generate.

Three weight rules turn a valid digit string into a complex number:

* case 1 multiplies digit ``n`` by ``alpha**n``;
* case 2 by ``eta_1 * ... * eta_n`` where ``eta`` alternates between
  ``alpha`` and its conjugate;
* case 3 by ``xi_1 * ... * xi_n`` where ``xi`` is conjugated after
  every non-zero digit and kept after every zero.

Clouds are built level by level with numpy over the whole frontier of
valid prefixes instead of one string at a time.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from enum import Enum, IntEnum
from pathlib import Path
from typing import (
    IO,
    Iterable,
    List,
    Optional,
    Sequence,
    Tuple,
    Union,
)

import numpy as np

from .automata import Condition, DigitString, is_valid
from .errors import ConditionViolationError, InvalidArgumentError
from .numerics import (
    RationalAngle,
    check_contraction,
    digit_value,
    format_complex,
    parse_complex,
    unit_table,
    unit_value,
)

logger = logging.getLogger(__name__)

DEDUP_GRID = 1e-12


class CaseId(IntEnum):
    """Weight rule and IFS family."""

    CASE1 = 1
    CASE2 = 2
    CASE3 = 3

    @property
    def condition(self) -> Condition:
        return {
            CaseId.CASE1: Condition.GRC,
            CaseId.CASE2: Condition.SRC,
            CaseId.CASE3: Condition.AC,
        }[self]


class Subset(str, Enum):
    """Whole set, or only strings whose first non-zero digit is 1."""

    FULL = "full"
    FIRST_DIGIT_ONE = "one"


@dataclass(frozen=True)
class CloudMeta:
    """Where a cloud came from; rendered into the file header."""

    source: str = "case"
    case: Optional[CaseId] = None
    alpha: Optional[complex] = None
    angle: Optional[RationalAngle] = None
    subset: Optional[Subset] = None
    extra: Tuple[Tuple[str, str], ...] = ()

    def with_extra(self, key: str, value: str) -> "CloudMeta":
        kept = tuple(kv for kv in self.extra if kv[0] != key)
        return replace(self, extra=kept + ((key, value),))


@dataclass(frozen=True, eq=False)
class PointCloud:
    """Deduplicated, canonically sorted points with a tail bound."""

    points: np.ndarray
    depth: int
    tail_bound: float
    meta: CloudMeta = field(default_factory=CloudMeta)

    @classmethod
    def from_points(
        cls,
        points: Union[np.ndarray, Iterable[complex]],
        depth: int,
        tail_bound: float,
        meta: Optional[CloudMeta] = None,
        grid: float = DEDUP_GRID,
    ) -> "PointCloud":
        return cls(
            canonicalize(points, grid),
            depth,
            float(tail_bound),
            meta or CloudMeta(),
        )

    def __len__(self) -> int:
        return int(self.points.size)

    def header(self) -> str:
        meta = self.meta
        fields: List[Tuple[str, str]] = []
        if meta.case is not None:
            fields.append(("case", str(int(meta.case))))
        else:
            fields.append(("ifs", meta.source))
        if meta.alpha is not None:
            fields.append(("alpha", format_complex(meta.alpha)))
        if meta.angle is not None:
            fields.append(("theta", str(meta.angle)))
        fields.append(("depth", str(self.depth)))
        if meta.subset is not None:
            fields.append(("subset", meta.subset.value))
        fields.append(("tail", f"{self.tail_bound:.17g}"))
        fields.extend(meta.extra)
        return "# " + " ".join(f"{k}={v}" for k, v in fields)


def canonicalize(
    points: Union[np.ndarray, Iterable[complex]],
    grid: float = DEDUP_GRID,
) -> np.ndarray:
    """Snap to ``grid``, drop duplicates, sort by (re, im).

    Each grid cell keeps its smallest member so the surviving float
    values do not depend on the order points arrived in.
    """
    pts = np.asarray(
        points if isinstance(points, np.ndarray) else list(points),
        dtype=np.complex128,
    ).ravel()
    if pts.size == 0:
        return pts.copy()
    if not np.all(np.isfinite(pts)):
        raise InvalidArgumentError("cloud contains NaN or inf")
    # folds -0.0 into 0.0
    pts = pts + 0.0
    exact_re, key_re = _cell_keys(pts.real, grid)
    exact_im, key_im = _cell_keys(pts.imag, grid)
    order = np.lexsort((pts.imag, pts.real, key_im, key_re))
    pts = pts[order]
    key_re, key_im = key_re[order], key_im[order]
    exact_re, exact_im = exact_re[order], exact_im[order]
    keep = np.ones(pts.size, dtype=bool)
    keep[1:] = (
        (key_re[1:] != key_re[:-1])
        | (key_im[1:] != key_im[:-1])
        | (exact_re[1:] & (pts.real[1:] != pts.real[:-1]))
        | (exact_im[1:] & (pts.imag[1:] != pts.imag[:-1]))
    )
    return pts[keep]


def _cell_keys(
    coord: np.ndarray, grid: float
) -> Tuple[np.ndarray, np.ndarray]:
    """Grid-cell index per coordinate, kept as float64.

    Past 2**52 cells the float spacing exceeds the grid, so rounding
    is skipped there and the flag tells callers to compare exactly.
    """
    scaled = coord / grid
    exact = np.abs(scaled) >= 2.0**52
    return exact, np.where(exact, scaled, np.rint(scaled))


def series_tail(modulus: float, depth: int) -> float:
    """Bound on sum_{k > depth} modulus**k."""
    return modulus ** (depth + 1) / (1.0 - modulus)


def weight_ratios(
    case: CaseId, alpha: complex, w: DigitString
) -> List[complex]:
    """Per-position factors whose running product is the weight."""
    alpha = check_contraction(alpha)
    ratios: List[complex] = []
    ratio = alpha
    for digit in w.digits:
        ratios.append(ratio)
        if case is CaseId.CASE2 or (
            case is CaseId.CASE3 and not digit.is_zero
        ):
            ratio = ratio.conjugate()
    return ratios


def weight_products(
    case: CaseId, alpha: complex, w: DigitString
) -> List[complex]:
    """Coefficients W_1..W_n multiplying each digit of ``w``."""
    products: List[complex] = []
    running = 1 + 0j
    for ratio in weight_ratios(case, alpha, w):
        running *= ratio
        products.append(running)
    return products


def evaluate(
    case: CaseId, alpha: complex, w: DigitString
) -> complex:
    """Truncated series value of a valid string (Horner form)."""
    if not is_valid(case.condition, w):
        raise ConditionViolationError(
            f"{w} violates {case.condition.name}"
        )
    ratios = weight_ratios(case, alpha, w)
    acc = 0j
    for digit, ratio in zip(reversed(w.digits), reversed(ratios)):
        acc = ratio * (digit_value(digit, w.angle) + acc)
    return acc


@dataclass
class _Frontier:
    """All valid prefixes of one length, as parallel arrays."""

    seen: np.ndarray
    last: np.ndarray
    parity: np.ndarray
    value: np.ndarray
    weight: np.ndarray
    ratio: np.ndarray
    position: int

    @classmethod
    def root(cls, alpha: complex) -> "_Frontier":
        return cls(
            seen=np.zeros(1, dtype=bool),
            last=np.zeros(1, dtype=np.int64),
            parity=np.zeros(1, dtype=np.int8),
            value=np.zeros(1, dtype=np.complex128),
            weight=np.ones(1, dtype=np.complex128),
            ratio=np.full(1, alpha, dtype=np.complex128),
            position=0,
        )

    def __len__(self) -> int:
        return int(self.value.size)

    def split(self, parts: int) -> List["_Frontier"]:
        bounds = np.array_split(np.arange(len(self)), parts)
        return [
            _Frontier(
                self.seen[idx],
                self.last[idx],
                self.parity[idx],
                self.value[idx],
                self.weight[idx],
                self.ratio[idx],
                self.position,
            )
            for idx in bounds
            if idx.size
        ]


def _expand(
    front: _Frontier,
    case: CaseId,
    units: np.ndarray,
    first_nonzero: Optional[int],
) -> _Frontier:
    """Append every allowed digit to every prefix."""
    p = units.size
    position = front.position + 1
    condition = case.condition
    weight = front.weight * front.ratio
    flipped = np.conj(front.ratio)
    zero_ratio = flipped if case is CaseId.CASE2 else front.ratio
    nonzero_ratio = front.ratio if case is CaseId.CASE1 else flipped

    seen_list = [front.seen]
    last_list = [front.last]
    parity_list = [front.parity]
    value_list = [front.value]
    weight_list = [weight]
    ratio_list = [zero_ratio]

    def push(mask, rots, parity):
        seen_list.append(np.ones(rots.size, dtype=bool))
        last_list.append(rots)
        parity_list.append(parity)
        value_list.append(
            front.value[mask] + units[rots] * weight[mask]
        )
        weight_list.append(weight[mask])
        ratio_list.append(nonzero_ratio[mask])

    old = front.seen
    if np.any(old):
        if condition is Condition.GRC:
            direction = 1
        else:
            direction = np.where(front.parity[old] == 1, 1, -1)
        rots = (front.last[old] + direction) % p
        if condition is Condition.SRC:
            parity = np.full(rots.size, position % 2, np.int8)
        elif condition is Condition.AC:
            parity = (1 - front.parity[old]).astype(np.int8)
        else:
            parity = np.zeros(rots.size, dtype=np.int8)
        push(old, rots, parity)

    fresh = ~front.seen
    count = int(np.count_nonzero(fresh))
    if count:
        choices = (
            range(p) if first_nonzero is None else [first_nonzero % p]
        )
        for k in choices:
            rots = np.full(count, k, dtype=np.int64)
            if condition is Condition.SRC:
                parity = np.full(count, position % 2, np.int8)
            elif condition is Condition.AC:
                parity = np.ones(count, dtype=np.int8)
            else:
                parity = np.zeros(count, dtype=np.int8)
            push(fresh, rots, parity)

    return _Frontier(
        seen=np.concatenate(seen_list),
        last=np.concatenate(last_list),
        parity=np.concatenate(parity_list),
        value=np.concatenate(value_list),
        weight=np.concatenate(weight_list),
        ratio=np.concatenate(ratio_list),
        position=position,
    )


def _grow(
    front: _Frontier,
    depth: int,
    case: CaseId,
    units: np.ndarray,
    first_nonzero: Optional[int],
) -> np.ndarray:
    while front.position < depth:
        front = _expand(front, case, units, first_nonzero)
    return front.value


def series_values(
    case: CaseId,
    alpha: complex,
    angle: RationalAngle,
    depth: int,
    subset: Subset = Subset.FULL,
    threads: int = 1,
) -> np.ndarray:
    """Values of every valid length-``depth`` string, unsorted."""
    alpha = check_contraction(alpha)
    if depth < 0:
        raise InvalidArgumentError(f"depth must be >= 0, got {depth}")
    units = unit_table(angle)
    first = 0 if subset is Subset.FIRST_DIGIT_ONE else None
    front = _Frontier.root(alpha)
    threads = max(1, int(threads))
    # serial warm-up until there is enough work to share
    while front.position < depth and len(front) < 8 * threads:
        front = _expand(front, case, units, first)
    if threads == 1 or front.position >= depth:
        return _grow(front, depth, case, units, first)
    with ThreadPoolExecutor(max_workers=threads) as executor:
        futures = [
            executor.submit(_grow, chunk, depth, case, units, first)
            for chunk in front.split(threads)
        ]
        return np.concatenate([f.result() for f in futures])


def build_cloud(
    case: CaseId,
    alpha: complex,
    angle: RationalAngle,
    depth: int,
    subset: Subset = Subset.FULL,
    threads: int = 1,
    grid: float = DEDUP_GRID,
) -> PointCloud:
    """Depth-``depth`` truncation of the case's digit-series set."""
    started = time.perf_counter()
    values = series_values(
        case, alpha, angle, depth, subset, threads
    )
    cloud = PointCloud.from_points(
        values,
        depth,
        series_tail(abs(alpha), depth),
        CloudMeta(
            source="case",
            case=case,
            alpha=complex(alpha),
            angle=angle,
            subset=subset,
        ),
        grid,
    )
    logger.debug(
        "case %d alpha=%s theta=%s depth=%d subset=%s: "
        "%d strings -> %d points in %.3fs",
        int(case),
        format_complex(alpha),
        angle,
        depth,
        subset.value,
        values.size,
        len(cloud),
        time.perf_counter() - started,
    )
    return cloud


def rotate_cloud(c: PointCloud, step: int) -> PointCloud:
    """Multiply every point by ``exp(i*step*theta)``."""
    angle = c.meta.angle
    if angle is None:
        raise InvalidArgumentError("cloud carries no angle")
    if not 0 <= step < angle.p:
        raise InvalidArgumentError(
            f"rotation must be in [0, {angle.p}), got {step}"
        )
    if step == 0:
        return c
    return PointCloud.from_points(
        c.points * unit_value(step, angle),
        c.depth,
        c.tail_bound,
        c.meta.with_extra("rotation", str(step)),
    )


def conjugate_cloud(c: PointCloud) -> PointCloud:
    return PointCloud.from_points(
        np.conj(c.points),
        c.depth,
        c.tail_bound,
        c.meta.with_extra("conjugate", "true"),
    )


def merge_clouds(
    clouds: Sequence[PointCloud],
    meta: Optional[CloudMeta] = None,
) -> PointCloud:
    """Canonical union; keeps the weakest depth and tail bound."""
    if not clouds:
        raise InvalidArgumentError("nothing to merge")
    return PointCloud.from_points(
        np.concatenate([c.points for c in clouds]),
        min(c.depth for c in clouds),
        max(c.tail_bound for c in clouds),
        meta or clouds[0].meta,
    )


def write_cloud(c: PointCloud, target: Union[str, Path, IO[str]]):
    """Write the plain-text cloud format (header + "re im" lines)."""
    lines = [c.header()]
    lines.extend(
        f"{z.real:.17g} {z.imag:.17g}" for z in c.points.tolist()
    )
    text = "\n".join(lines) + "\n"
    if isinstance(target, (str, Path)):
        Path(target).write_text(text, encoding="utf-8")
    else:
        target.write(text)


def _parse_header(line: str) -> Tuple[CloudMeta, int, float]:
    values = dict(
        token.split("=", 1)
        for token in line.lstrip("#").split()
        if "=" in token
    )
    known = {"case", "ifs", "alpha", "theta", "depth", "subset", "tail"}
    meta = CloudMeta(
        source=values.get("ifs", "case"),
        case=CaseId(int(values["case"])) if "case" in values else None,
        alpha=(
            parse_complex(values["alpha"]) if "alpha" in values else None
        ),
        angle=(
            RationalAngle.parse(values["theta"])
            if "theta" in values
            else None
        ),
        subset=Subset(values["subset"]) if "subset" in values else None,
        extra=tuple(
            (k, v) for k, v in values.items() if k not in known
        ),
    )
    return meta, int(values.get("depth", 0)), float(values.get("tail", 0))


def read_cloud(path: Union[str, Path]) -> PointCloud:
    """Load a cloud file written by :func:`write_cloud`."""
    text = Path(path).read_text(encoding="utf-8").splitlines()
    if not text or not text[0].startswith("#"):
        raise InvalidArgumentError(f"{path}: missing cloud header")
    try:
        meta, depth, tail = _parse_header(text[0])
        rows = [line.split() for line in text[1:] if line.strip()]
        points = np.array(
            [complex(float(re), float(im)) for re, im in rows],
            dtype=np.complex128,
        )
    except (KeyError, ValueError) as exc:
        raise InvalidArgumentError(f"{path}: {exc}") from exc
    return PointCloud.from_points(points, depth, tail, meta)
