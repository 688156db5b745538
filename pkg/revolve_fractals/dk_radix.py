"""Revolving base (1+i) representations of Gaussian integers.

Every non-zero Gaussian integer has exactly four digit strings over
{0, 1, -1, i, -i} whose non-zero digits, read left to right, follow
1 -> -i -> -1 -> i -> 1; the right-most non-zero digit (the anchor)
tells them apart. All arithmetic here is on Python integers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterator, List, Tuple

from .automata import DigitString
from .errors import InvalidArgumentError, NonTerminationError
from .numerics import Digit, ZERO, angle_new

MAX_STEPS = 256

_FULL = re.compile(r"^([+-]?\d+)([+-])(\d*)i$")
_IMAG = re.compile(r"^([+-]?)(\d*)i$")
_REAL = re.compile(r"^[+-]?\d+$")


@dataclass(frozen=True, order=True)
class GaussianInt:
    x: int
    y: int = 0

    @classmethod
    def parse(cls, text: str) -> "GaussianInt":
        """Parse "X+Yi", "X-Yi", "Yi", "i", "-i" or "X"."""
        raw = text.replace(" ", "")
        match = _FULL.match(raw)
        if match:
            y = int(match.group(3) or 1)
            sign = -1 if match.group(2) == "-" else 1
            return cls(int(match.group(1)), sign * y)
        match = _IMAG.match(raw)
        if match:
            y = int(match.group(2) or 1)
            return cls(0, -y if match.group(1) == "-" else y)
        if _REAL.match(raw):
            return cls(int(raw), 0)
        raise InvalidArgumentError(
            f"expected a Gaussian integer like -5+33i, got {text!r}"
        )

    def __add__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(self.x - other.x, self.y - other.y)

    def __mul__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(
            self.x * other.x - self.y * other.y,
            self.x * other.y + self.y * other.x,
        )

    def __bool__(self) -> bool:
        return bool(self.x or self.y)

    def divisible_by_base(self) -> bool:
        """(1+i) divides x+iy exactly when x and y share parity."""
        return (self.x - self.y) % 2 == 0

    def div_base(self) -> "GaussianInt":
        """Exact division by (1+i)."""
        if not self.divisible_by_base():
            raise InvalidArgumentError(f"{self} is not divisible by 1+i")
        return GaussianInt(
            (self.x + self.y) // 2, (self.y - self.x) // 2
        )

    def __str__(self) -> str:
        if not self.y:
            return str(self.x)
        imag = {1: "i", -1: "-i"}.get(self.y, f"{self.y}i")
        if not self.x:
            return imag
        sign = "" if imag.startswith("-") else "+"
        return f"{self.x}{sign}{imag}"


BASE = GaussianInt(1, 1)


class UnitDigit(Enum):
    ZERO = "0"
    ONE = "1"
    MINUS_ONE = "-1"
    I = "i"
    MINUS_I = "-i"

    @property
    def gaussian(self) -> GaussianInt:
        return _UNIT_VALUES[self]

    def times_i(self) -> "UnitDigit":
        return _TIMES_I[self]

    def __str__(self) -> str:
        return self.value


_UNIT_VALUES = {
    UnitDigit.ZERO: GaussianInt(0, 0),
    UnitDigit.ONE: GaussianInt(1, 0),
    UnitDigit.MINUS_ONE: GaussianInt(-1, 0),
    UnitDigit.I: GaussianInt(0, 1),
    UnitDigit.MINUS_I: GaussianInt(0, -1),
}
_TIMES_I = {
    UnitDigit.ZERO: UnitDigit.ZERO,
    UnitDigit.ONE: UnitDigit.I,
    UnitDigit.I: UnitDigit.MINUS_ONE,
    UnitDigit.MINUS_ONE: UnitDigit.MINUS_I,
    UnitDigit.MINUS_I: UnitDigit.ONE,
}
ANCHORS = (
    UnitDigit.ONE,
    UnitDigit.MINUS_ONE,
    UnitDigit.I,
    UnitDigit.MINUS_I,
)
# left-to-right cycle 1 -> -i -> -1 -> i mapped to theta = -pi/2
_ROTATION_INDEX = {
    UnitDigit.ONE: 0,
    UnitDigit.MINUS_I: 1,
    UnitDigit.MINUS_ONE: 2,
    UnitDigit.I: 3,
}


@dataclass(frozen=True)
class Representation:
    """Digits most significant first."""

    digits: Tuple[UnitDigit, ...] = ()

    @classmethod
    def parse(cls, text: str) -> "Representation":
        try:
            return cls(tuple(UnitDigit(tok) for tok in text.split()))
        except ValueError as exc:
            raise InvalidArgumentError(
                f"bad digit in {text!r}"
            ) from exc

    @property
    def anchor(self) -> UnitDigit:
        for digit in reversed(self.digits):
            if digit is not UnitDigit.ZERO:
                return digit
        return UnitDigit.ZERO

    def __len__(self) -> int:
        return len(self.digits)

    def __str__(self) -> str:
        return " ".join(str(d) for d in self.digits)


def value(r: Representation) -> GaussianInt:
    """Horner evaluation in base (1+i)."""
    acc = GaussianInt(0, 0)
    for digit in r.digits:
        acc = acc * BASE + digit.gaussian
    return acc


def represent(
    z: GaussianInt,
    anchor: UnitDigit,
    max_steps: int = MAX_STEPS,
) -> Representation:
    """The revolving representation of ``z`` ending in ``anchor``.

    Digits come out least significant first and are forced: a zero
    when (1+i) divides the remainder, else the next unit in the
    cycle, since every unit is congruent to 1 modulo (1+i).
    """
    if not z:
        raise InvalidArgumentError("0 has no anchored representation")
    if anchor is UnitDigit.ZERO:
        raise InvalidArgumentError("anchor must be a unit")
    expected = anchor
    emitted: List[UnitDigit] = []
    rest = z
    while rest:
        if len(emitted) >= max_steps:
            raise NonTerminationError(
                f"no representation of {z} with anchor {anchor} "
                f"within {max_steps} digits"
            )
        if rest.divisible_by_base():
            emitted.append(UnitDigit.ZERO)
        else:
            emitted.append(expected)
            rest = rest - expected.gaussian
            expected = expected.times_i()
        rest = rest.div_base()
    return Representation(tuple(reversed(emitted)))


def all_four(
    z: GaussianInt, max_steps: int = MAX_STEPS
) -> List[Representation]:
    """Representations for anchors 1, -1, i, -i in that order."""
    return [represent(z, a, max_steps) for a in ANCHORS]


def revolving_strings(max_length: int) -> Iterator[Representation]:
    """Every revolving string with a non-zero leading digit.

    Strings are grown right to left from each anchor; the leading
    digit is forced by the cycle, so only zero positions vary.
    """

    def grow(
        tail: Tuple[UnitDigit, ...], nxt: UnitDigit
    ) -> Iterator[Representation]:
        yield Representation(tail)
        if len(tail) == max_length:
            return
        for width in range(1, max_length - len(tail) + 1):
            zeros = (UnitDigit.ZERO,) * (width - 1)
            yield from grow((nxt,) + zeros + tail, nxt.times_i())

    for anchor in ANCHORS:
        for trailing in range(max_length):
            start = (anchor,) + (UnitDigit.ZERO,) * trailing
            yield from grow(start, anchor.times_i())


def representations_by_value(
    max_length: int,
) -> Dict[GaussianInt, List[Representation]]:
    """Group :func:`revolving_strings` by the integer they denote."""
    grouped: Dict[GaussianInt, List[Representation]] = {}
    for rep in revolving_strings(max_length):
        grouped.setdefault(value(rep), []).append(rep)
    return grouped


def to_digit_string(r: Representation) -> DigitString:
    """Read ``r`` left to right as a GRC string with theta = -pi/2."""
    angle = angle_new(-1, 4)
    return DigitString(
        angle,
        tuple(
            ZERO if d is UnitDigit.ZERO else Digit.of(_ROTATION_INDEX[d])
            for d in r.digits
        ),
    )
