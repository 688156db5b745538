"""Exact angle arithmetic, the symbolic digit alphabet, and helpers.

Angles are signed rational fractions of a full turn, digits are
indices into the p-th roots generated by the angle. Nothing in this
module rounds until ``digit_value`` turns a symbol into a float.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import InvalidArgumentError


@dataclass(frozen=True)
class RationalAngle:
    """Angle theta = 2*pi*num/den with -pi < theta <= pi.

    Construction reduces the fraction and shifts it by whole turns
    into the canonical range, so equal angles compare equal.
    """

    num: int
    den: int

    def __post_init__(self):
        if self.den == 0:
            raise InvalidArgumentError(
                "angle denominator must be non-zero"
            )
        turn = Fraction(self.num, self.den)
        num, den = turn.numerator, turn.denominator
        num %= den
        if 2 * num > den:
            num -= den
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @property
    def p(self) -> int:
        """Number of distinct non-zero digits."""
        return self.den

    @property
    def q(self) -> int:
        return abs(self.num)

    @property
    def radians(self) -> float:
        return 2.0 * math.pi * self.num / self.den

    @classmethod
    def parse(cls, text: str) -> "RationalAngle":
        """Parse the "Q/P" turn-fraction syntax without floats."""
        raw = text.strip()
        head, sep, tail = raw.partition("/")
        try:
            num = int(head)
            den = int(tail) if sep else 1
        except ValueError as exc:
            raise InvalidArgumentError(
                f"angle must look like Q/P, got {text!r}"
            ) from exc
        return cls(num, den)

    def __str__(self) -> str:
        return f"{self.num}/{self.den}"


def angle_new(num: int, den: int) -> RationalAngle:
    """Build a reduced, range-normalized angle."""
    return RationalAngle(num, den)


@dataclass(frozen=True)
class Digit:
    """A symbol of the digit alphabet: zero or ``w**rot``."""

    rot: Optional[int] = None

    def __post_init__(self):
        if self.rot is not None and self.rot < 0:
            raise InvalidArgumentError(
                f"rotation index must be >= 0, got {self.rot}"
            )

    @classmethod
    def of(cls, rot: int) -> "Digit":
        return cls(rot)

    @property
    def is_zero(self) -> bool:
        return self.rot is None

    def sort_key(self) -> int:
        """Zero sorts first, then rotations by index."""
        return -1 if self.rot is None else self.rot

    def __str__(self) -> str:
        return "0" if self.rot is None else f"w^{self.rot}"


ZERO = Digit()


def unit_value(k: int, angle: RationalAngle) -> complex:
    """Return exp(i*k*theta), reducing k*num modulo den first."""
    m = (k * angle.num) % angle.den
    if 2 * m > angle.den:
        m -= angle.den
    phase = 2.0 * math.pi * m / angle.den
    return complex(math.cos(phase), math.sin(phase))


def digit_value(d: Digit, angle: RationalAngle) -> complex:
    """Numerical value of a digit under ``angle``."""
    if d.rot is None:
        return 0j
    if d.rot >= angle.den:
        raise InvalidArgumentError(
            f"rotation index {d.rot} out of range for p={angle.den}"
        )
    return unit_value(d.rot, angle)


def unit_table(angle: RationalAngle) -> np.ndarray:
    """All p non-zero digit values, indexed by rotation."""
    return np.array(
        [unit_value(k, angle) for k in range(angle.den)],
        dtype=np.complex128,
    )


def rot_step(k: int, direction: int, angle: RationalAngle) -> int:
    """Multiply ``w**k`` by ``w**direction`` as an index shift."""
    if direction not in (1, -1):
        raise InvalidArgumentError(
            f"direction must be +1 or -1, got {direction}"
        )
    return (k + direction) % angle.den


def check_contraction(value: complex, name: str = "alpha") -> complex:
    """Reject parameters that are not strict contractions."""
    value = complex(value)
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise InvalidArgumentError(f"{name} must be finite")
    if abs(value) >= 1.0:
        raise InvalidArgumentError(
            f"|{name}| must be < 1, got {abs(value):.6g}"
        )
    return value


def parse_complex(text: str) -> complex:
    """Parse "RE,IM" (or a bare real) into a complex number."""
    parts = [part.strip() for part in text.split(",")]
    if len(parts) not in (1, 2) or not all(parts):
        raise InvalidArgumentError(
            f"expected RE,IM, got {text!r}"
        )
    try:
        re_part = float(parts[0])
        im_part = float(parts[1]) if len(parts) == 2 else 0.0
    except ValueError as exc:
        raise InvalidArgumentError(
            f"expected RE,IM, got {text!r}"
        ) from exc
    return complex(re_part, im_part)


def format_complex(value: complex) -> str:
    """Inverse of :func:`parse_complex` at 17 significant digits."""
    return f"{value.real:.17g},{value.imag:.17g}"
