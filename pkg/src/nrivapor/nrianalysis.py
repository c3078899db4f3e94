# -*- coding: utf-8 -*-
"""Double negative regions, Re{n} contours and circle fits of a FieldMap."""
__author__ = "Sven Sager"
__copyright__ = "Copyright (C) 2023 Sven Sager"
__license__ = "GPLv2"

from dataclasses import dataclass

import numpy as np

from . import proginit
from .errors import DegenerateFit, NoEnclosingContour

# Edges of a cell by corner: 0 (i, j), 1 (i+1, j), 2 (i+1, j+1), 3 (i, j+1)
_CORNER_EDGES = (
    ("bottom", "left"),
    ("bottom", "right"),
    ("right", "top"),
    ("top", "left"),
)


@dataclass(frozen=True)
class ContourPolyline:
    """Iso line of a scalar field in lambda units.

    A closed polyline does not repeat its first point at the end.

    """

    level: float
    points: tuple
    closed: bool

    def __post_init__(self):
        if len(self.points) < 2:
            raise ValueError("parameter points must have at least 2 entries")
        if self.closed and len(self.points) < 3:
            raise ValueError("closed polylines need at least 3 points")

    def as_array(self):
        return np.asarray(self.points, dtype=float)

    def area(self):
        """Enclosed area by the shoelace formula, 0.0 for open lines."""
        if not self.closed:
            return 0.0
        pts = self.as_array()
        x, y = pts[:, 0], pts[:, 1]
        return 0.5 * abs(float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))))

    def encloses(self, x, y):
        """Even-odd test of a point against a closed polyline."""
        if not self.closed:
            return False
        pts = self.as_array()
        x0, y0 = pts[:, 0], pts[:, 1]
        x1, y1 = np.roll(x0, -1), np.roll(y0, -1)
        crosses = (y0 > y) != (y1 > y)
        with np.errstate(divide="ignore", invalid="ignore"):
            x_cross = x0 + (y - y0) * (x1 - x0) / (y1 - y0)
        return bool(np.count_nonzero(crosses & (x < x_cross)) % 2)


@dataclass(frozen=True)
class CircleFitResult:
    """Algebraic circle fit of a contour."""

    center_x: float
    center_y: float
    radius: float
    rms_residual: float
    isotropy: float

    def is_isotropic(self, threshold=0.05):
        return self.isotropy <= threshold


@dataclass(frozen=True)
class RegionMetrics:
    """Summary values of one map.

    Coordinates are (x, y) tuples in lambda, complex values of the grid
    point nearest to the reference.

    """

    double_negative_fraction: float
    min_re_n: float
    argmin: tuple
    n_at_reference: complex
    reference: tuple
    min_re_eps: float
    argmin_eps: tuple
    min_re_mu: float
    argmin_mu: tuple
    eps_at_reference: complex
    mu_at_reference: complex


@dataclass(frozen=True)
class LineProfile:
    """Re eps_r, Re mu_r and Re n along one grid line."""

    axis: str
    at: float
    coordinates: np.ndarray
    re_eps: np.ndarray
    re_mu: np.ndarray
    re_n: np.ndarray
    flags: np.ndarray


def _valid_mask(fmap):
    return ~fmap.error_mask() & np.isfinite(fmap.n) \
        & np.isfinite(fmap.eps_r) & np.isfinite(fmap.mu_r)


def double_negative_mask(fmap):
    """Cells with Re eps_r < 0 and Re mu_r < 0 and no error flag.
    @return Boolean array of shape (ny, nx)"""
    with np.errstate(invalid="ignore"):
        return _valid_mask(fmap) & (fmap.eps_r.real < 0) & (fmap.mu_r.real < 0)


def _edge_point(key, xs, ys, values, level):
    """Linear interpolation of the level crossing on a grid edge."""
    kind, i, j = key
    if kind == "h":
        p0, p1 = (xs[i], ys[j]), (xs[i + 1], ys[j])
        v0, v1 = values[j, i], values[j, i + 1]
    else:
        p0, p1 = (xs[i], ys[j]), (xs[i], ys[j + 1])
        v0, v1 = values[j, i], values[j + 1, i]
    t = (level - v0) / (v1 - v0)
    t = min(max(t, 0.0), 1.0)
    return (
        float(p0[0] * (1 - t) + p1[0] * t),
        float(p0[1] * (1 - t) + p1[1] * t),
    )


def _cell_segments(values, above, i, j, level):
    """Segments of one cell as pairs of edge keys."""
    edges = {
        "bottom": ("h", i, j),
        "right": ("v", i + 1, j),
        "top": ("h", i, j + 1),
        "left": ("v", i, j),
    }
    corners = (above[j, i], above[j, i + 1], above[j + 1, i + 1], above[j + 1, i])
    count = sum(corners)
    if count in (0, 4):
        return []

    if count == 2 and corners[0] == corners[2]:
        # Saddle, the cell average decides which diagonal is connected
        center = (values[j, i] + values[j, i + 1] + values[j + 1, i + 1] + values[j + 1, i]) / 4
        isolate = not (center > level)
        return [
            (edges[_CORNER_EDGES[k][0]], edges[_CORNER_EDGES[k][1]])
            for k in range(4) if corners[k] == isolate
        ]

    # One corner differs from the other three or the cell is split in halves
    crossed = []
    for name, (a, b) in (
            ("bottom", (0, 1)), ("right", (1, 2)), ("top", (2, 3)), ("left", (3, 0))):
        if corners[a] != corners[b]:
            crossed.append(edges[name])
    return [(crossed[0], crossed[1])]


def _chain(segments):
    """Join segments with shared edge keys to polylines.
    @return List of (keys, closed)"""
    neighbours = {}
    for a, b in segments:
        neighbours.setdefault(a, []).append(b)
        neighbours.setdefault(b, []).append(a)

    visited = set()
    lst_line = []

    def walk(start):
        keys = [start]
        visited.add(start)
        prev, cur = None, start
        while True:
            nxt = [k for k in neighbours[cur] if k != prev and k not in visited]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            keys.append(cur)
            visited.add(cur)
        closed = len(keys) > 2 and start in neighbours[cur]
        return keys, closed

    # Open lines start at ends with a single neighbour
    for key in sorted(neighbours):
        if key not in visited and len(neighbours[key]) == 1:
            lst_line.append(walk(key))
    for key in sorted(neighbours):
        if key not in visited:
            lst_line.append(walk(key))
    return lst_line


def contours_from_field(xs, ys, values, level, valid=None):
    """Marching squares on a scalar field given on grid corners.

    @param xs Column coordinates, length nx
    @param ys Row coordinates, length ny
    @param values Field of shape (ny, nx)
    @param level Iso value
    @param valid Boolean mask of usable points, cells touching an unusable
           point are skipped
    @return List of ContourPolyline

    """
    values = np.asarray(values, dtype=float)
    ny, nx = values.shape
    if nx < 2 or ny < 2:
        raise ValueError("field needs at least 2 x 2 points")
    usable = np.isfinite(values)
    if valid is not None:
        usable &= np.asarray(valid, dtype=bool)
    with np.errstate(invalid="ignore"):
        above = values > level

    segments = []
    for j in range(ny - 1):
        for i in range(nx - 1):
            if not usable[j:j + 2, i:i + 2].all():
                continue
            segments.extend(_cell_segments(values, above, i, j, level))

    points = {}
    lst_contour = []
    for keys, closed in _chain(segments):
        for key in keys:
            if key not in points:
                points[key] = _edge_point(key, xs, ys, values, level)
        polyline = _unique_points([points[k] for k in keys], closed)
        if len(polyline) < (3 if closed else 2):
            continue
        lst_contour.append(ContourPolyline(float(level), tuple(polyline), closed))
    return lst_contour


def _unique_points(lst_point, closed):
    """Drop vertices equal to their predecessor.

    Edges meeting in a grid point on the level give the same point twice.
    A closed line also loses a last vertex equal to the first one.

    """
    lst_unique = []
    for point in lst_point:
        if not lst_unique or point != lst_unique[-1]:
            lst_unique.append(point)
    if closed and len(lst_unique) > 1 and lst_unique[-1] == lst_unique[0]:
        lst_unique.pop()
    return lst_unique


def extract_contours(fmap, level):
    """Iso lines of Re{n}, cells with error flags count as outside.

    @param fmap FieldMap
    @param level Contour value of Re{n}
    @return List of ContourPolyline, empty if the level is not crossed

    """
    lst_contour = contours_from_field(
        fmap.xs, fmap.ys, fmap.n.real, level, _valid_mask(fmap)
    )
    proginit.logger.debug(
        "{0} contours at level {1}".format(len(lst_contour), level)
    )
    return lst_contour


def innermost_contour(contours, reference):
    """Smallest closed contour around a reference point.

    @param contours List of ContourPolyline
    @param reference Tuple (x, y) in lambda
    @return ContourPolyline
    @raise NoEnclosingContour if no closed contour encloses the point

    """
    x, y = reference
    lst_enclosing = [c for c in contours if c.closed and c.encloses(x, y)]
    if not lst_enclosing:
        raise NoEnclosingContour(
            "no closed contour encloses ({0}, {1})".format(x, y),
            reference=[x, y], contours=len(contours),
        )
    return min(lst_enclosing, key=lambda c: c.area())


def fit_circle(polyline):
    """Least squares circle through the points of a polyline.

    Solves 2*xc*x + 2*yc*y + c = x**2 + y**2 with r**2 = c + xc**2 + yc**2.
    The points are shifted to their mean before the solve.

    @param polyline ContourPolyline or sequence of (x, y)
    @return CircleFitResult
    @raise DegenerateFit for less than 3 or collinear points

    """
    points = polyline.points if isinstance(polyline, ContourPolyline) else polyline
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[0] < 3:
        raise DegenerateFit("circle fit needs at least 3 points", points=int(len(pts)))

    mean = pts.mean(axis=0)
    x = pts[:, 0] - mean[0]
    y = pts[:, 1] - mean[1]
    problem_mat = np.column_stack((2 * x, 2 * y, np.ones_like(x)))
    soln_vec = x ** 2 + y ** 2
    circle_params, _, rank, _ = np.linalg.lstsq(problem_mat, soln_vec, rcond=None)
    if rank < 3:
        raise DegenerateFit("points are collinear", points=int(len(pts)))

    cx, cy, c = circle_params
    r2 = c + cx ** 2 + cy ** 2
    if not r2 > 0:
        raise DegenerateFit("no real circle fits the points", points=int(len(pts)))
    radius = float(np.sqrt(r2))
    residual = np.hypot(x - cx, y - cy) - radius
    rms = float(np.sqrt(np.mean(residual ** 2)))
    return CircleFitResult(
        float(cx + mean[0]), float(cy + mean[1]), radius, rms, rms / radius
    )


def _argmin(fmap, values, valid):
    if not valid.any():
        return float("nan"), (float("nan"), float("nan"))
    masked = np.where(valid, values, np.inf)
    j, i = np.unravel_index(int(np.argmin(masked)), masked.shape)
    return float(values[j, i]), (float(fmap.xs[i]), float(fmap.ys[j]))


def region_metrics(fmap, reference=(0.75, 0.75)):
    """Double negative fraction, extremes and values at a reference point.

    @param fmap FieldMap
    @param reference Tuple (x, y) in lambda
    @return RegionMetrics

    """
    valid = _valid_mask(fmap)
    mask = double_negative_mask(fmap)
    min_re_n, argmin = _argmin(fmap, fmap.n.real, valid)
    min_re_eps, argmin_eps = _argmin(fmap, fmap.eps_r.real, valid)
    min_re_mu, argmin_mu = _argmin(fmap, fmap.mu_r.real, valid)
    i, j = fmap.index_nearest(*reference)
    return RegionMetrics(
        double_negative_fraction=float(np.count_nonzero(mask)) / mask.size,
        min_re_n=min_re_n,
        argmin=argmin,
        n_at_reference=complex(fmap.n[j, i]),
        reference=(float(fmap.xs[i]), float(fmap.ys[j])),
        min_re_eps=min_re_eps,
        argmin_eps=argmin_eps,
        min_re_mu=min_re_mu,
        argmin_mu=argmin_mu,
        eps_at_reference=complex(fmap.eps_r[j, i]),
        mu_at_reference=complex(fmap.mu_r[j, i]),
    )


def line_profile(fmap, axis="x", at=0.75):
    """Cut through a map along the grid line nearest to a coordinate.

    @param fmap FieldMap
    @param axis 'x' runs along x at fixed y=at, 'y' along y at fixed x=at
    @param at Fixed coordinate in lambda
    @return LineProfile

    """
    if axis == "x":
        _, j = fmap.index_nearest(fmap.grid.x_min, at)
        sel = np.s_[j, :]
        coordinates, fixed = fmap.xs, float(fmap.ys[j])
    elif axis == "y":
        i, _ = fmap.index_nearest(at, fmap.grid.y_min)
        sel = np.s_[:, i]
        coordinates, fixed = fmap.ys, float(fmap.xs[i])
    else:
        raise ValueError("parameter axis must be 'x' or 'y'")
    return LineProfile(
        axis, fixed, coordinates,
        fmap.eps_r[sel].real, fmap.mu_r[sel].real, fmap.n[sel].real, fmap.flags[sel],
    )
