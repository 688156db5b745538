"""Automata for the revolving, signed revolving and alternating rules.

A digit string is consumed left to right (``digits[0]`` is the first
digit, position 1). Once the first non-zero digit has been read each
rule leaves exactly two choices per position: zero, or the previous
non-zero digit turned one step in a direction the state decides.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterator, Optional, Sequence, Tuple

from .errors import ConditionViolationError, InvalidArgumentError
from .numerics import ZERO, Digit, RationalAngle, rot_step


class Condition(str, Enum):
    """Which rule picks the next non-zero digit."""

    GRC = "grc"
    SRC = "src"
    AC = "ac"


@dataclass(frozen=True)
class AutomatonState:
    """Everything the rules need to know about a consumed prefix.

    ``pos_parity`` is the parity of the last non-zero position and
    ``count_parity`` the parity of the number of non-zero digits.
    """

    seen_nonzero: bool = False
    last_rot: int = 0
    pos_parity: int = 0
    count_parity: int = 0
    position: int = 0


EMPTY_STATE = AutomatonState()


@dataclass(frozen=True)
class DigitString:
    """A finite digit string tied to its angle."""

    angle: RationalAngle
    digits: Tuple[Digit, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "digits", tuple(self.digits))
        for digit in self.digits:
            if digit.rot is not None and digit.rot >= self.angle.p:
                raise InvalidArgumentError(
                    f"digit {digit} out of range for "
                    f"p={self.angle.p}"
                )

    @classmethod
    def of(
        cls, angle: RationalAngle, rots: Sequence[Optional[int]]
    ) -> "DigitString":
        """Build from rotation indices, ``None`` meaning zero."""
        return cls(angle, tuple(Digit(rot) for rot in rots))

    @classmethod
    def parse(cls, text: str, angle: RationalAngle) -> "DigitString":
        """Parse the "0,w^0,w^1" text form."""
        digits = []
        for token in filter(None, (t.strip() for t in text.split(","))):
            if token == "0":
                digits.append(ZERO)
            elif token.startswith("w^"):
                try:
                    digits.append(Digit.of(int(token[2:]) % angle.p))
                except ValueError as exc:
                    raise InvalidArgumentError(
                        f"bad digit token {token!r}"
                    ) from exc
            else:
                raise InvalidArgumentError(
                    f"bad digit token {token!r}"
                )
        return cls(angle, tuple(digits))

    def rots(self) -> Tuple[Optional[int], ...]:
        return tuple(digit.rot for digit in self.digits)

    def __len__(self) -> int:
        return len(self.digits)

    def __str__(self) -> str:
        return ",".join(str(digit) for digit in self.digits)


def step_direction(c: Condition, s: AutomatonState) -> int:
    """Direction the next non-zero digit turns once one was seen."""
    if c is Condition.GRC:
        return 1
    if c is Condition.SRC:
        return 1 if s.pos_parity == 1 else -1
    return 1 if s.count_parity == 1 else -1


def next_allowed(
    c: Condition,
    s: AutomatonState,
    angle: RationalAngle,
    first_nonzero: Optional[int] = None,
) -> Tuple[Digit, ...]:
    """Digits that may follow state ``s``, in canonical order.

    ``first_nonzero`` pins the first non-zero digit to one rotation
    (the first-digit-one subsets use 0).
    """
    if not s.seen_nonzero:
        if first_nonzero is not None:
            return (ZERO, Digit.of(first_nonzero % angle.p))
        return (ZERO,) + tuple(
            Digit.of(k) for k in range(angle.p)
        )
    forced = rot_step(s.last_rot, step_direction(c, s), angle)
    return (ZERO, Digit.of(forced))


def _consume(s: AutomatonState, d: Digit) -> AutomatonState:
    position = s.position + 1
    if d.rot is None:
        return replace(s, position=position)
    return AutomatonState(
        seen_nonzero=True,
        last_rot=d.rot,
        pos_parity=position % 2,
        count_parity=(s.count_parity + 1) % 2,
        position=position,
    )


def advance(
    c: Condition,
    s: AutomatonState,
    d: Digit,
    angle: RationalAngle,
) -> AutomatonState:
    """Consume digit ``d``; raise if the rule forbids it."""
    if d not in next_allowed(c, s, angle):
        raise ConditionViolationError(
            f"{c.name}: digit {d} not allowed at position "
            f"{s.position + 1}"
        )
    return _consume(s, d)


def is_valid(c: Condition, w: DigitString) -> bool:
    state = EMPTY_STATE
    for digit in w.digits:
        if digit not in next_allowed(c, state, w.angle):
            return False
        state = _consume(state, digit)
    return True


def enumerate_strings(
    c: Condition,
    angle: RationalAngle,
    n: int,
    first_nonzero: Optional[int] = None,
) -> Iterator[DigitString]:
    """Stream every valid length-``n`` string in lexicographic order.

    Memory stays proportional to ``n``; the number of strings is
    2**n with ``first_nonzero`` set and 1 + p*(2**n - 1) without.
    """
    if n < 0:
        raise InvalidArgumentError(f"length must be >= 0, got {n}")

    prefix: list = []

    def walk(state: AutomatonState) -> Iterator[DigitString]:
        if state.position == n:
            yield DigitString(angle, tuple(prefix))
            return
        for digit in next_allowed(c, state, angle, first_nonzero):
            prefix.append(digit)
            yield from walk(_consume(state, digit))
            prefix.pop()

    yield from walk(EMPTY_STATE)


def count_strings(
    c: Condition,
    p: int,
    n: int,
    first_nonzero: Optional[int] = None,
) -> int:
    """Closed-form size of :func:`enumerate_strings` output."""
    del c  # all three rules branch identically
    if n < 0:
        raise InvalidArgumentError(f"length must be >= 0, got {n}")
    if first_nonzero is not None:
        return 2**n
    return 1 + p * (2**n - 1)
