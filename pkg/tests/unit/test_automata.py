"""Tests for the revolving, signed and alternating automata."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from revolve_fractals.automata import (
    EMPTY_STATE,
    Condition,
    DigitString,
    advance,
    count_strings,
    enumerate_strings,
    is_valid,
    next_allowed,
)
from revolve_fractals.errors import (
    ConditionViolationError,
    InvalidArgumentError,
)
from revolve_fractals.numerics import (
    ZERO,
    Digit,
    angle_new,
    digit_value,
)

QUARTER = angle_new(1, 4)


def _walk(c, angle, rots):
    state = EMPTY_STATE
    for rot in rots:
        state = advance(c, state, Digit(rot), angle)
    return state


def test_empty_state_allows_every_digit():
    allowed = next_allowed(Condition.GRC, EMPTY_STATE, QUARTER)
    assert allowed == (ZERO, Digit(0), Digit(1), Digit(2), Digit(3))


def test_first_nonzero_pin():
    allowed = next_allowed(
        Condition.AC, EMPTY_STATE, QUARTER, first_nonzero=0
    )
    assert allowed == (ZERO, Digit(0))


def test_src_even_position_turns_backwards():
    state = _walk(Condition.SRC, QUARTER, [None, 0])
    assert state.pos_parity == 0
    assert next_allowed(Condition.SRC, state, QUARTER) == (
        ZERO,
        Digit(3),
    )


def test_src_odd_position_turns_forwards():
    state = _walk(Condition.SRC, QUARTER, [0])
    assert next_allowed(Condition.SRC, state, QUARTER) == (
        ZERO,
        Digit(1),
    )


def test_ac_walkthrough():
    # 0 -> 0 -> 1 -> w -> 0 -> 1
    state = _walk(Condition.AC, QUARTER, [None, None, 0, 1])
    assert state.count_parity == 0
    assert state.last_rot == 1
    assert next_allowed(Condition.AC, state, QUARTER) == (
        ZERO,
        Digit(0),
    )
    state = _walk(Condition.AC, QUARTER, [None, None, 0, 1, None, 0])
    assert state.position == 6


def test_advance_updates_state():
    state = advance(Condition.GRC, EMPTY_STATE, ZERO, QUARTER)
    assert not state.seen_nonzero
    assert state.position == 1

    state = advance(Condition.GRC, EMPTY_STATE, Digit(0), QUARTER)
    assert state.seen_nonzero
    assert state.last_rot == 0
    assert state.position == 1

    odd = _walk(Condition.AC, QUARTER, [0])
    assert odd.count_parity == 1
    after = advance(Condition.AC, odd, Digit(1), QUARTER)
    assert after.count_parity == 0
    assert after.last_rot == 1


def test_advance_rejects_forbidden_digit():
    state = _walk(Condition.GRC, QUARTER, [0])
    with pytest.raises(ConditionViolationError):
        advance(Condition.GRC, state, Digit(0), QUARTER)


def test_is_valid_examples():
    minus_quarter = angle_new(-1, 4)
    cycle = DigitString.of(minus_quarter, [0, 1, 2, 3])
    assert is_valid(Condition.GRC, cycle)
    assert not is_valid(
        Condition.GRC, DigitString.of(QUARTER, [0, 0])
    )
    zeros = DigitString.of(QUARTER, [None] * 7)
    for c in Condition:
        assert is_valid(c, zeros)


def test_digit_string_text():
    w = DigitString.parse("0,w^0,w^1", QUARTER)
    assert w.rots() == (None, 0, 1)
    assert str(w) == "0,w^0,w^1"
    assert len(w) == 3
    with pytest.raises(InvalidArgumentError):
        DigitString.parse("0,x", QUARTER)
    with pytest.raises(InvalidArgumentError):
        DigitString.of(QUARTER, [4])


def test_enumerate_first_digit_one():
    strings = [
        str(w)
        for w in enumerate_strings(Condition.GRC, QUARTER, 2, 0)
    ]
    assert strings == ["0,0", "0,w^0", "w^0,0", "w^0,w^1"]


def test_enumerate_unconstrained_count():
    strings = list(enumerate_strings(Condition.GRC, QUARTER, 2))
    assert len(strings) == 13


def test_enumerate_zero_length():
    for c in Condition:
        strings = list(enumerate_strings(c, QUARTER, 0))
        assert [len(w) for w in strings] == [0]


def test_enumerate_negative_length():
    with pytest.raises(InvalidArgumentError):
        list(enumerate_strings(Condition.GRC, QUARTER, -1))
    with pytest.raises(InvalidArgumentError):
        count_strings(Condition.GRC, 4, -1)


@pytest.mark.parametrize("c", list(Condition))
@pytest.mark.parametrize("n", range(0, 9))
def test_enumerate_counts(c, n):
    angle = angle_new(1, 6)
    pinned = sum(1 for _ in enumerate_strings(c, angle, n, 0))
    assert pinned == 2**n == count_strings(c, 6, n, 0)
    full = sum(1 for _ in enumerate_strings(c, angle, n))
    assert full == 1 + 6 * (2**n - 1) == count_strings(c, 6, n)


def _assert_matches_brute_force(c, angle, max_length):
    alphabet = [None] + list(range(angle.p))
    for n in range(max_length + 1):
        expected = [
            rots
            for rots in itertools.product(alphabet, repeat=n)
            if is_valid(c, DigitString.of(angle, rots))
        ]
        got = [w.rots() for w in enumerate_strings(c, angle, n)]
        assert sorted(got, key=_order) == sorted(expected, key=_order)
        # already in lexicographic order
        assert got == sorted(got, key=_order)


@pytest.mark.parametrize("c", list(Condition))
@pytest.mark.parametrize("num, den", [(1, 3), (-1, 4), (1, 5)])
def test_enumerate_matches_brute_force(c, num, den):
    _assert_matches_brute_force(c, angle_new(num, den), 4)


@pytest.mark.parametrize("c", list(Condition))
def test_enumerate_matches_brute_force_hexagonal(c):
    _assert_matches_brute_force(c, angle_new(1, 6), 4)


@pytest.mark.slow
@pytest.mark.parametrize("c", list(Condition))
@pytest.mark.parametrize("num, den", [(1, 6), (-1, 6), (3, 8), (-1, 8)])
def test_enumerate_matches_brute_force_long(c, num, den):
    _assert_matches_brute_force(c, angle_new(num, den), 6)


def _order(rots):
    return tuple(-1 if r is None else r for r in rots)


def test_grc_conjugation_symmetry():
    angle, mirrored = angle_new(1, 5), angle_new(-1, 5)
    forward = list(enumerate_strings(Condition.GRC, angle, 5))
    backward = list(enumerate_strings(Condition.GRC, mirrored, 5))
    assert len(forward) == len(backward)
    for w, m in zip(forward, backward):
        assert is_valid(Condition.GRC, DigitString(mirrored, w.digits))
        for a, b in zip(w.digits, m.digits):
            assert digit_value(b, mirrored) == pytest.approx(
                digit_value(a, angle).conjugate()
            )


@settings(max_examples=50, deadline=None)
@given(
    st.sampled_from(list(Condition)),
    st.integers(3, 8),
    st.integers(0, 10),
)
def test_nonzero_steps(c, p, n):
    angle = angle_new(1, p)
    for w in enumerate_strings(c, angle, n, 0):
        nonzero = [r for r in w.rots() if r is not None]
        steps = {
            (b - a) % p for a, b in zip(nonzero, nonzero[1:])
        }
        if c is Condition.GRC:
            assert steps <= {1}
        else:
            assert steps <= {1, p - 1}
        if c is Condition.AC:
            assert set(nonzero) <= {0, 1}
