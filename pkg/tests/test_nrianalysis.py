# -*- coding: utf-8 -*-
"""Region masks, marching squares contours and circle fits."""
import math

import numpy as np
import pytest
from conftest import paraboloid, synthetic_map

from nrivapor.errors import DegenerateFit, NoEnclosingContour
from nrivapor.fieldgrid import GridSpec, evaluate_map
from nrivapor.mediumresponse import SampleFlag
from nrivapor.nrianalysis import (
    ContourPolyline, contours_from_field, double_negative_mask, extract_contours,
    fit_circle, innermost_contour, line_profile, region_metrics,
)


def circle_points(radius, count=64, center=(0.75, 0.75)):
    t = np.linspace(0, 2 * np.pi, count, endpoint=False)
    return [
        (center[0] + radius * math.cos(a), center[1] + radius * math.sin(a)) for a in t
    ]


def point_set(polyline):
    return frozenset((round(x, 12), round(y, 12)) for x, y in polyline.points)


def test_vacuum_has_no_double_negative_cells():
    fmap = synthetic_map(np.ones((11, 11)))
    assert not double_negative_mask(fmap).any()


def test_single_double_negative_cell():
    eps = np.ones((11, 11), dtype=complex)
    mu = np.ones((11, 11), dtype=complex)
    eps[3, 4] = -1 + 0.01j
    mu[3, 4] = -2 + 0.01j
    fmap = synthetic_map(np.ones((11, 11)), eps=eps, mu=mu)
    mask = double_negative_mask(fmap)
    assert np.count_nonzero(mask) == 1
    assert mask[3, 4]


def test_error_cells_are_not_double_negative():
    eps = np.full((5, 5), -1 + 0j)
    fmap = synthetic_map(np.ones((5, 5)), eps=eps, mu=eps.copy())
    fmap.flags[2, 2] = int(SampleFlag.NEAR_SINGULAR)
    mask = double_negative_mask(fmap)
    assert np.count_nonzero(mask) == 24
    assert not mask[2, 2]


def test_paraboloid_contour_is_circle():
    fmap = synthetic_map(paraboloid())
    contours = extract_contours(fmap, 0.01)
    assert len(contours) == 1
    (contour,) = contours
    assert contour.closed
    assert contour.encloses(0.75, 0.75)

    fit = fit_circle(contour)
    spacing = fmap.grid.dx
    assert fit.radius == pytest.approx(0.1, rel=0.02)
    assert abs(fit.center_x - 0.75) <= spacing
    assert abs(fit.center_y - 0.75) <= spacing
    radial = np.hypot(contour.as_array()[:, 0] - 0.75, contour.as_array()[:, 1] - 0.75)
    assert np.max(np.abs(radial - 0.1)) <= 2 * spacing
    assert fit.is_isotropic()


def test_level_on_grid_points_gives_no_repeated_vertices():
    # (0.85, 0.75), (0.81, 0.83), ... lie exactly on the level
    values = np.round(paraboloid(), 12)
    fmap = synthetic_map(values)
    assert values[50, 70] == 0.01
    (contour,) = extract_contours(fmap, 0.01)
    assert contour.closed
    pts = contour.points
    assert pts[-1] != pts[0]
    assert all(a != b for a, b in zip(pts, pts[1:]))
    assert fit_circle(contour).radius == pytest.approx(0.1, rel=0.02)


def test_constant_field_has_no_contours():
    grid = GridSpec(0.5, 1.0, 0.5, 1.0, 11, 11)
    assert contours_from_field(grid.xs(), grid.ys(), np.ones((11, 11)), 0.5) == []


def test_saddle_at_center_level():
    values = np.array([[1.0, 0.0], [0.0, 1.0]])
    contours = contours_from_field([0.0, 1.0], [0.0, 1.0], values, 0.5)
    assert len(contours) == 2
    assert not any(c.closed for c in contours)
    assert {point_set(c) for c in contours} == {
        frozenset({(0.5, 0.0), (0.0, 0.5)}),
        frozenset({(1.0, 0.5), (0.5, 1.0)}),
    }


def test_saddle_below_center_level():
    values = np.array([[1.0, 0.0], [0.0, 1.0]])
    contours = contours_from_field([0.0, 1.0], [0.0, 1.0], values, 0.4)
    assert len(contours) == 2
    assert {point_set(c) for c in contours} == {
        frozenset({(0.6, 0.0), (1.0, 0.4)}),
        frozenset({(0.4, 1.0), (0.0, 0.6)}),
    }


def test_invalid_cells_are_skipped():
    grid = GridSpec(0.5, 1.0, 0.5, 1.0, 101, 101)
    values = paraboloid()
    valid = np.zeros(values.shape, dtype=bool)
    assert contours_from_field(grid.xs(), grid.ys(), values, 0.01, valid) == []


def test_error_flags_open_the_contour():
    fmap = synthetic_map(paraboloid())
    fmap.flags[50, 70] = int(SampleFlag.CM_POLE)
    contours = extract_contours(fmap, 0.01)
    assert contours
    assert not any(c.closed for c in contours)


def test_innermost_of_concentric_circles():
    small = ContourPolyline(-2.0, tuple(circle_points(0.1)), True)
    large = ContourPolyline(-1.0, tuple(circle_points(0.2)), True)
    off = ContourPolyline(-3.0, tuple(circle_points(0.05, center=(0.55, 0.55))), True)
    assert innermost_contour([large, off, small], (0.75, 0.75)) is small


def test_no_enclosing_contour():
    line = ContourPolyline(0.0, ((0.5, 0.5), (1.0, 1.0)), False)
    with pytest.raises(NoEnclosingContour):
        innermost_contour([line], (0.75, 0.75))
    with pytest.raises(NoEnclosingContour):
        innermost_contour([], (0.75, 0.75))


def test_polyline_area():
    square = ContourPolyline(0.0, ((0, 0), (1, 0), (1, 1), (0, 1)), True)
    assert square.area() == pytest.approx(1.0)
    assert square.encloses(0.5, 0.5)
    assert not square.encloses(1.5, 0.5)


def test_exact_circle_fit():
    fit = fit_circle(circle_points(0.1, count=8))
    assert fit.center_x == pytest.approx(0.75, abs=1e-12)
    assert fit.center_y == pytest.approx(0.75, abs=1e-12)
    assert fit.radius == pytest.approx(0.1, rel=1e-12)
    assert fit.rms_residual <= 1e-12


@pytest.mark.parametrize("points", [
    [(0.0, 0.0), (1.0, 1.0)],
    [(0.0, 0.0), (1.0, 1.0), (2.0, 2.0), (3.0, 3.0)],
])
def test_degenerate_fit(points):
    with pytest.raises(DegenerateFit):
        fit_circle(points)


def test_perturbed_circle_residual():
    t = np.linspace(0, 2 * np.pi, 200, endpoint=False)
    r = 0.1 + 0.001 * (-1.0) ** np.arange(200)
    points = np.column_stack((0.75 + r * np.cos(t), 0.75 + r * np.sin(t)))
    fit = fit_circle(points)
    assert fit.rms_residual == pytest.approx(0.001, rel=0.1)
    assert fit.radius == pytest.approx(0.1, rel=1e-3)


def test_ellipse_is_not_isotropic():
    t = np.linspace(0, 2 * np.pi, 64, endpoint=False)
    points = np.column_stack((0.75 + 0.12 * np.cos(t), 0.75 + 0.1 * np.sin(t)))
    fit = fit_circle(points)
    assert fit.isotropy >= 0.05
    assert not fit.is_isotropic(0.05)


def test_region_metrics_of_vacuum():
    metrics = region_metrics(synthetic_map(np.ones((11, 11))))
    assert metrics.double_negative_fraction == 0
    assert metrics.min_re_n == 1
    assert metrics.n_at_reference == 1
    assert metrics.reference == (pytest.approx(0.75), pytest.approx(0.75))


def test_region_metrics_argmin():
    values = paraboloid(21, 21, center=(0.6, 0.9))
    metrics = region_metrics(synthetic_map(values))
    assert metrics.min_re_n == pytest.approx(0.0, abs=1e-15)
    assert metrics.argmin == (pytest.approx(0.6), pytest.approx(0.9))


def test_line_profile():
    values = paraboloid(21, 21)
    fmap = synthetic_map(values)
    along_x = line_profile(fmap, "x", 0.75)
    assert along_x.at == pytest.approx(0.75)
    np.testing.assert_array_equal(along_x.re_n, values[10, :])
    np.testing.assert_array_equal(along_x.coordinates, fmap.xs)

    along_y = line_profile(fmap, "y", 0.6)
    assert along_y.at == pytest.approx(0.6)
    np.testing.assert_array_equal(along_y.re_n, values[:, 4])

    with pytest.raises(ValueError):
        line_profile(fmap, "z", 0.75)


@pytest.fixture(scope="module")
def paper_map(paper_cfg):
    grid = GridSpec(0.5, 1.0, 0.5, 1.0, 81, 81)
    return evaluate_map(paper_cfg.params, paper_cfg.drive, grid, paper_cfg.settings)


def test_paper_map_region(paper_map):
    mask = double_negative_mask(paper_map)
    i, j = paper_map.index_nearest(0.75, 0.75)
    assert mask[j, i]
    metrics = region_metrics(paper_map)
    assert 0 < metrics.double_negative_fraction < 1
    assert metrics.n_at_reference.real < 0
    assert metrics.min_re_n <= metrics.n_at_reference.real


def test_paper_map_contour_centered_on_antinode(paper_map):
    level = 0.9 * region_metrics(paper_map).n_at_reference.real
    contour = innermost_contour(extract_contours(paper_map, level), (0.75, 0.75))
    fit = fit_circle(contour)
    assert abs(fit.center_x - 0.75) <= 0.02
    assert abs(fit.center_y - 0.75) <= 0.02


@pytest.fixture(scope="module")
def fine_maps(paper_cfg):
    grid = GridSpec(0.5, 1.0, 0.5, 1.0, 101, 101)
    maps = {}
    for dp in (4.7, 5.0, 5.3, 5.7):
        params = paper_cfg.params.with_delta_p(dp * paper_cfg.gamma_unit)
        maps[dp] = evaluate_map(params, paper_cfg.drive, grid, paper_cfg.settings)
    return maps


def auto_level_fit(fmap):
    level = 0.9 * region_metrics(fmap).n_at_reference.real
    return fit_circle(innermost_contour(extract_contours(fmap, level), (0.75, 0.75)))


@pytest.mark.parametrize("delta_p", [5.0, 5.3, 5.7])
def test_antinode_contour_is_isotropic(fine_maps, delta_p):
    fit = auto_level_fit(fine_maps[delta_p])
    assert fit.is_isotropic(0.05)
    assert abs(fit.center_x - 0.75) <= 0.02
    assert abs(fit.center_y - 0.75) <= 0.02


def test_contour_fit_stable_under_refinement(paper_cfg, fine_maps):
    coarse = evaluate_map(
        paper_cfg.params, paper_cfg.drive, GridSpec(0.5, 1.0, 0.5, 1.0, 51, 51),
        paper_cfg.settings,
    )
    fine = fine_maps[5.0]
    level = 0.9 * region_metrics(fine).n_at_reference.real
    assert region_metrics(coarse).n_at_reference.real == pytest.approx(
        region_metrics(fine).n_at_reference.real, rel=1e-12
    )
    fit_coarse = fit_circle(innermost_contour(extract_contours(coarse, level), (0.75, 0.75)))
    fit_fine = fit_circle(innermost_contour(extract_contours(fine, level), (0.75, 0.75)))
    spacing = coarse.grid.dx
    assert abs(fit_coarse.radius - fit_fine.radius) < spacing
    assert abs(fit_coarse.center_x - fit_fine.center_x) < spacing
    assert abs(fit_coarse.center_y - fit_fine.center_y) < spacing


def test_lowest_detuning_minimum_splits_along_y(fine_maps):
    fmap = fine_maps[4.7]
    metrics = region_metrics(fmap)
    x_min, y_min = metrics.argmin
    assert abs(x_min - 0.75) <= 0.005
    assert abs(y_min - 0.75) >= 0.02
    assert metrics.min_re_n < metrics.n_at_reference.real

    # mirror partner of the minimum about the antinode
    i, j = fmap.index_nearest(0.75, 1.5 - y_min)
    assert fmap.n[j, i].real == pytest.approx(metrics.min_re_n, rel=1e-9)

    level = metrics.min_re_n + 0.5 * (metrics.n_at_reference.real - metrics.min_re_n)
    loops = [c for c in extract_contours(fmap, level) if c.closed]
    assert len(loops) == 2
    assert not any(c.encloses(0.75, 0.75) for c in loops)
    fits = sorted((fit_circle(c) for c in loops), key=lambda f: f.center_y)
    spacing = fmap.grid.dx
    for fit in fits:
        assert abs(fit.center_x - 0.75) <= spacing
    assert fits[0].center_y < 0.75 < fits[1].center_y
    assert fits[0].center_y + fits[1].center_y == pytest.approx(1.5, abs=spacing)
