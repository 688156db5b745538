"""Tests for conjugate similarities and two-map IFS helpers."""

import math

import numpy as np
import pytest

from revolve_fractals.errors import InvalidArgumentError
from revolve_fractals.ifs import (
    ConjSimilarityMap,
    IfsPair,
    Preset,
    apply,
    chaos_game,
    fixed_point,
    hutchinson_step,
    ifs_for_case,
    preset,
    word_points,
)
from revolve_fractals.numerics import angle_new
from revolve_fractals.pointset import (
    CaseId,
    PointCloud,
    Subset,
    build_cloud,
)
from revolve_fractals.verify import hausdorff

DRAGON = (1 - 1j) / 2
MINUS_QUARTER = angle_new(-1, 4)
KOCH = complex(0.5, math.sqrt(3) / 6)


def test_apply_plain_and_conjugate():
    plain = ConjSimilarityMap(0.5j, 1)
    flipped = ConjSimilarityMap(0.5j, 1, conj=True)
    assert apply(plain, 1 + 1j) == pytest.approx(0.5 + 0.5j)
    assert flipped(1 + 1j) == pytest.approx(1.5 + 0.5j)
    arr = np.array([1 + 1j, 2j])
    assert flipped(arr) == pytest.approx([1.5 + 0.5j, 2])


def test_map_rejects_expansion():
    with pytest.raises(InvalidArgumentError):
        ConjSimilarityMap(1.0)
    with pytest.raises(InvalidArgumentError):
        ConjSimilarityMap(0.9 + 0.9j, conj=True)


@pytest.mark.parametrize("conj", [False, True])
@pytest.mark.parametrize(
    "scale, translate",
    [(0.5, 1), (KOCH, DRAGON), (-0.3 + 0.4j, 2 - 1j)],
)
def test_fixed_point(scale, translate, conj):
    m = ConjSimilarityMap(scale, translate, conj)
    z = fixed_point(m)
    assert m(z) == pytest.approx(z, abs=1e-12)


def test_rev_dragon_maps():
    pair = ifs_for_case(CaseId.CASE1, DRAGON, MINUS_QUARTER)
    assert fixed_point(pair.m2) == pytest.approx((1 - 2j) / 5)
    assert pair.m2(DRAGON) == pytest.approx(-0.5j)
    assert pair.m2(pair.m2(0)) == pytest.approx(-0.5j)
    assert pair.m1(1) == pytest.approx(DRAGON)


@pytest.mark.parametrize(
    "case, conj1, conj2",
    [
        (CaseId.CASE1, False, False),
        (CaseId.CASE2, True, True),
        (CaseId.CASE3, False, True),
    ],
)
def test_ifs_for_case_shape(case, conj1, conj2):
    pair = ifs_for_case(case, KOCH, angle_new(-1, 6))
    assert (pair.m1.conj, pair.m2.conj) == (conj1, conj2)
    assert pair.name == f"case{int(case)}"
    assert pair.m2.translate == KOCH
    assert pair.meta().alpha == KOCH


def test_pair_ratio_and_radius():
    pair = ifs_for_case(CaseId.CASE1, DRAGON, MINUS_QUARTER)
    r = abs(DRAGON)
    assert pair.ratio == pytest.approx(r)
    assert pair.radius == pytest.approx(r / (1 - r))
    assert pair.maps == (pair.m1, pair.m2)


def test_presets():
    tile = preset("dragon-tile")
    pair = ifs_for_case(CaseId.CASE1, DRAGON, MINUS_QUARTER)
    assert (tile.m1, tile.m2) == (pair.m1, pair.m2)
    assert tile.name == "dragon_tile"

    levy = preset(Preset.LEVY)
    assert levy.m1.scale == (1 + 1j) / 2
    assert levy.m2.translate == (1 + 1j) / 2

    kiko = preset("kiko_pair", 0.5, 0.5)
    assert kiko.m2(1) == pytest.approx(1)
    with pytest.raises(InvalidArgumentError):
        preset("kiko_pair", alpha=0.5)
    with pytest.raises(ValueError):
        preset("sierpinski")


def test_hutchinson_step():
    pair = ifs_for_case(CaseId.CASE1, DRAGON, MINUS_QUARTER)
    seed = PointCloud.from_points([0j], 0, 2.0)
    stepped = hutchinson_step(pair, seed)
    assert stepped.points == pytest.approx([0, DRAGON])
    assert stepped.depth == 1
    assert stepped.tail_bound == pytest.approx(2.0 * abs(DRAGON))


def test_word_points_depth_zero():
    pair = preset(Preset.LEVY)
    cloud = word_points(pair, 0, seed=1 + 1j)
    assert cloud.points.tolist() == [1 + 1j]
    assert cloud.tail_bound == pytest.approx(abs(1 + 1j) + pair.radius)
    with pytest.raises(InvalidArgumentError):
        word_points(pair, -1)


@pytest.mark.parametrize(
    "case, alpha, num, den",
    [
        (CaseId.CASE1, DRAGON, -1, 4),
        (CaseId.CASE2, KOCH, -1, 6),
        (CaseId.CASE3, (1 + 1j) / 2, 1, 4),
    ],
)
def test_word_points_match_series(case, alpha, num, den):
    angle = angle_new(num, den)
    words = word_points(ifs_for_case(case, alpha, angle), 8)
    series = build_cloud(case, alpha, angle, 8, Subset.FIRST_DIGIT_ONE)
    assert hausdorff(words, series) < 1e-9


def test_chaos_game_lies_on_attractor():
    pair = ifs_for_case(CaseId.CASE2, KOCH, angle_new(-1, 6))
    cloud = chaos_game(pair, 500, seed=7)
    words = word_points(pair, 10)
    assert 0 < len(cloud) <= 500
    gaps = np.abs(cloud.points[:, None] - words.points[None, :])
    assert gaps.min(axis=1).max() <= words.tail_bound
    assert ("chaos_seed", "7") in cloud.meta.extra


def test_chaos_game_is_seeded():
    pair = preset(Preset.LEVY)
    a = chaos_game(pair, 300, seed=3)
    b = chaos_game(pair, 300, seed=3)
    assert np.array_equal(a.points, b.points)
    with pytest.raises(InvalidArgumentError):
        chaos_game(pair, 0)


def test_custom_pair_meta():
    pair = IfsPair(ConjSimilarityMap(0.5), ConjSimilarityMap(0.5, 0.5))
    assert pair.meta().source == "custom"
    assert pair.meta().angle is None
