"""Set identities across every bundled figure and all three cases."""

import pytest

from revolve_fractals.numerics import angle_new
from revolve_fractals.pointset import CaseId, Subset, build_cloud
from revolve_fractals.raster import FIGURES
from revolve_fractals.verify import (
    Classical,
    check_classical,
    check_set_equation,
    check_union_theorem,
    hausdorff,
)

SERIES_FIGURES = [
    name for name, fig in FIGURES.items() if fig.ifs is None
]

# one alpha per case, three angles each
GRID = [
    (CaseId.CASE1, (1 - 1j) / 2),
    (CaseId.CASE2, complex(0.5, 0.3)),
    (CaseId.CASE3, (2 + 1j) / 4),
]
ANGLES = [(1, 3), (-1, 4), (1, 7)]


@pytest.mark.parametrize("name", SERIES_FIGURES)
def test_figure_identities(name):
    fig = FIGURES[name]
    equation = check_set_equation(fig.case, fig.alpha, fig.angle, 8)
    union = check_union_theorem(fig.case, fig.alpha, fig.angle, 8)
    assert equation.passed, equation.lines()
    assert union.passed, union.lines()


@pytest.mark.parametrize("case, alpha", GRID)
@pytest.mark.parametrize("num, den", ANGLES)
def test_case_angle_grid(case, alpha, num, den):
    angle = angle_new(num, den)
    for depth in (0, 1, 5, 9):
        assert check_set_equation(case, alpha, angle, depth).passed
        assert check_union_theorem(case, alpha, angle, depth).passed


@pytest.mark.parametrize("case, alpha", GRID)
def test_threads_do_not_change_results(case, alpha):
    angle = angle_new(1, 5)
    serial = build_cloud(case, alpha, angle, 10, Subset.FULL, 1)
    threaded = build_cloud(case, alpha, angle, 10, Subset.FULL, 8)
    assert len(serial) == len(threaded)
    assert hausdorff(serial, threaded) < 1e-12


@pytest.mark.parametrize("which", list(Classical))
def test_classical_identities(which):
    assert check_classical(which, depth=12, threads=2).passed


@pytest.mark.slow
@pytest.mark.parametrize("name", SERIES_FIGURES)
def test_figure_identities_deep(name):
    fig = FIGURES[name]
    assert check_set_equation(
        fig.case, fig.alpha, fig.angle, 13, threads=4
    ).passed
    assert check_union_theorem(
        fig.case, fig.alpha, fig.angle, 13, threads=4
    ).passed


@pytest.mark.slow
@pytest.mark.parametrize("which", list(Classical))
def test_classical_identities_default_depth(which):
    assert check_classical(which, threads=4).passed


ACCEPTANCE_ALPHAS = [(1 - 1j) / 2, (1 + 1j) / 2, (2 + 1j) / 4]
ACCEPTANCE_ANGLES = [(1, 4), (-1, 4), (1, 6), (-1, 6), (1, 8), (-1, 8)]


def _set_equations_hold(case, alpha, num, den, depths):
    angle = angle_new(num, den)
    for depth in depths:
        report = check_set_equation(case, alpha, angle, depth)
        assert report.passed, report.lines()


@pytest.mark.parametrize("case", list(CaseId))
@pytest.mark.parametrize("alpha", ACCEPTANCE_ALPHAS)
@pytest.mark.parametrize("num, den", ACCEPTANCE_ANGLES)
def test_set_equation_acceptance_grid(case, alpha, num, den):
    _set_equations_hold(case, alpha, num, den, (4, 7))


@pytest.mark.slow
@pytest.mark.parametrize("case", list(CaseId))
@pytest.mark.parametrize("alpha", ACCEPTANCE_ALPHAS)
@pytest.mark.parametrize("num, den", ACCEPTANCE_ANGLES)
def test_set_equation_acceptance_grid_all_depths(case, alpha, num, den):
    _set_equations_hold(case, alpha, num, den, range(4, 11))
