# -*- coding: utf-8 -*-
"""Standing-wave drive profiles and maps of the medium response.

The coupling field is a standing wave along x, the signal field one along y.
A map holds the response on the corners of a regular grid, x runs along the
columns and y along the rows. Every row is evaluated by one vectorized call,
worker threads only decide which thread computes which row. The result does
not depend on the number of workers.

"""
__author__ = "Sven Sager"
__copyright__ = "Copyright (C) 2023 Sven Sager"
__license__ = "GPLv2"

import math
import os
from dataclasses import dataclass
from queue import Empty, Queue
from threading import Event, Thread

import numpy as np

from . import proginit
from .errors import ConfigError, NriError
from .helper import DEFAULT_SETTINGS
from .mediumresponse import ERROR_FLAGS, MediumSample, SampleFlag, medium_arrays
from .quantumsteady import LocalDrive, polarizability_arrays


def _finite(value):
    return isinstance(value, (int, float)) and math.isfinite(value)


@dataclass(frozen=True)
class StandingWaveConfig:
    """Peak Rabi frequencies in rad/s and wavelengths in lambda units."""

    omega_c0: float
    omega_s0: float
    lambda1: float = 1.0
    lambda2: float = 1.0

    def __post_init__(self):
        for name in ("omega_c0", "omega_s0"):
            value = getattr(self, name)
            if not (_finite(value) and value >= 0):
                raise ValueError("parameter {0} must be a finite number >= 0".format(name))
        for name in ("lambda1", "lambda2"):
            value = getattr(self, name)
            if not (_finite(value) and value > 0):
                raise ValueError("parameter {0} must be a finite number > 0".format(name))


@dataclass(frozen=True)
class GridSpec:
    """Rectangular region in lambda units with nx * ny grid points.

    Both end points belong to the grid, so an odd count puts the center of
    the default domain exactly on a grid point.

    """

    x_min: float = 0.5
    x_max: float = 1.0
    y_min: float = 0.5
    y_max: float = 1.0
    nx: int = 201
    ny: int = 201

    def __post_init__(self):
        for name in ("x_min", "x_max", "y_min", "y_max"):
            if not _finite(getattr(self, name)):
                raise ConfigError("GRID." + name, "must be a finite number")
        for name in ("nx", "ny"):
            value = getattr(self, name)
            if not (isinstance(value, int) and not isinstance(value, bool) and value >= 2):
                raise ConfigError("GRID." + name, "must be an integer >= 2")
        if not self.x_min < self.x_max:
            raise ConfigError("GRID.x_max", "must be greater than x_min")
        if not self.y_min < self.y_max:
            raise ConfigError("GRID.y_max", "must be greater than y_min")

    @property
    def dx(self):
        return (self.x_max - self.x_min) / (self.nx - 1)

    @property
    def dy(self):
        return (self.y_max - self.y_min) / (self.ny - 1)

    def xs(self):
        """x coordinates of the columns."""
        return self.x_min + np.arange(self.nx) * self.dx

    def ys(self):
        """y coordinates of the rows."""
        return self.y_min + np.arange(self.ny) * self.dy


@dataclass(frozen=True)
class SweepSpec:
    """Probe detunings in rad/s evaluated on the same grid and drive."""

    delta_p_values: tuple
    params: object
    cfg: StandingWaveConfig
    grid: GridSpec

    def __post_init__(self):
        values = tuple(float(v) for v in self.delta_p_values)
        if not values:
            raise ConfigError("SWEEP.delta_p_values", "must not be empty")
        if not all(math.isfinite(v) for v in values):
            raise ConfigError("SWEEP.delta_p_values", "must be finite numbers")
        object.__setattr__(self, "delta_p_values", values)


def local_rabi(cfg, x, y):
    """Local Rabi frequencies of both standing waves.

    @param cfg StandingWaveConfig
    @param x Position along the coupling wave in lambda, scalar or array
    @param y Position along the signal wave in lambda, scalar or array
    @return LocalDrive with real values, the sign of the wave is kept

    """
    omega_c = cfg.omega_c0 * np.sin(2 * np.pi * np.asarray(x, dtype=float) / cfg.lambda1)
    omega_s = cfg.omega_s0 * np.sin(2 * np.pi * np.asarray(y, dtype=float) / cfg.lambda2)
    if omega_c.ndim == 0:
        omega_c = float(omega_c)
    if omega_s.ndim == 0:
        omega_s = float(omega_s)
    return LocalDrive(omega_c, omega_s)


class FieldMap:
    """Response of the medium on all grid points.

    All arrays have the shape (ny, nx); element [j, i] belongs to
    x = xs[i], y = ys[j]. Flags are SampleFlag bits, cells with an error
    bit hold NaN values.

    """

    def __init__(self, grid, params, cfg, eps_r, mu_r, n, gamma_e, gamma_m, flags):
        self.grid = grid
        self.params = params
        self.cfg = cfg
        self.eps_r = eps_r
        self.mu_r = mu_r
        self.n = n
        self.gamma_e = gamma_e
        self.gamma_m = gamma_m
        self.flags = flags

    def __len__(self):
        return self.grid.nx * self.grid.ny

    @property
    def delta_p(self):
        return self.params.delta_p

    @property
    def xs(self):
        return self.grid.xs()

    @property
    def ys(self):
        return self.grid.ys()

    def sample(self, i, j):
        """MediumSample of column i and row j."""
        return MediumSample(
            complex(self.eps_r[j, i]), complex(self.mu_r[j, i]), complex(self.n[j, i]),
            SampleFlag(int(self.flags[j, i])),
        )

    def samples(self):
        """All samples in row-major order, x runs fastest."""
        return [
            self.sample(i, j)
            for j in range(self.grid.ny)
            for i in range(self.grid.nx)
        ]

    def error_mask(self):
        """True for cells with an error flag."""
        return (self.flags & int(ERROR_FLAGS)) != 0

    def error_cells(self):
        """List of (i, j, flags) for all cells with an error flag."""
        rows, cols = np.nonzero(self.error_mask())
        return [(int(i), int(j), SampleFlag(int(self.flags[j, i]))) for j, i in zip(rows, cols)]

    def index_nearest(self, x, y):
        """Column and row of the grid point nearest to (x, y).
        @return Tuple (i, j) clipped to the grid"""
        i = int(round((x - self.grid.x_min) / self.grid.dx))
        j = int(round((y - self.grid.y_min) / self.grid.dy))
        return min(max(i, 0), self.grid.nx - 1), min(max(j, 0), self.grid.ny - 1)


class _MapJob:
    """Preallocated result arrays and the evaluation of single rows."""

    def __init__(self, params, cfg, grid, settings):
        self.params = params
        self.cfg = cfg
        self.grid = grid
        self.settings = settings
        self.xs = grid.xs()
        self.ys = grid.ys()
        shape = (grid.ny, grid.nx)
        self.eps_r = np.empty(shape, dtype=complex)
        self.mu_r = np.empty(shape, dtype=complex)
        self.n = np.empty(shape, dtype=complex)
        self.gamma_e = np.empty(shape, dtype=complex)
        self.gamma_m = np.empty(shape, dtype=complex)
        self.flags = np.zeros(shape, dtype=np.int64)

        # Coupling profile is the same for every row
        self._omega_c = local_rabi(cfg, self.xs, 0.0).omega_c

    def evaluate_row(self, j):
        omega_s = local_rabi(self.cfg, 0.0, self.ys[j]).omega_s
        drive = LocalDrive(self._omega_c, np.full(self.grid.nx, omega_s))
        gamma_e, gamma_m, near_singular, singular = polarizability_arrays(
            self.params, drive, self.settings
        )
        eps_r, mu_r, n, flags = medium_arrays(
            self.params.density, gamma_e, gamma_m, self.settings
        )
        flags = np.where(near_singular, flags | SampleFlag.NEAR_SINGULAR, flags)
        flags = np.where(singular, flags | SampleFlag.SINGULAR_SYSTEM, flags)

        self.eps_r[j] = eps_r
        self.mu_r[j] = mu_r
        self.n[j] = n
        self.gamma_e[j] = gamma_e
        self.gamma_m[j] = gamma_m
        self.flags[j] = flags

    def result(self):
        return FieldMap(
            self.grid, self.params, self.cfg, self.eps_r, self.mu_r, self.n,
            self.gamma_e, self.gamma_m, self.flags,
        )


class MapWorker(Thread):
    """Evaluates rows of a map until the row queue is empty."""

    def __init__(self, job, rows, evt_abort):
        """Instantiiert MapWorker-Klasse.

        @param job _MapJob with the result arrays
        @param rows Queue of row indexes
        @param evt_abort Event set by any worker on an exception

        """
        if not isinstance(job, _MapJob):
            raise ValueError("parameter job must be <class '_MapJob'>")
        super().__init__(daemon=True)
        self._job = job
        self._rows = rows
        self._evt_abort = evt_abort
        self.exception = None

    def run(self):
        while not self._evt_abort.is_set():
            try:
                j = self._rows.get_nowait()
            except Empty:
                break
            try:
                self._job.evaluate_row(j)
            except Exception as e:
                self.exception = e
                self._evt_abort.set()
                break


def resolve_workers(workers):
    """Number of threads for a map, 0 or None means one per CPU."""
    if workers is None or workers == 0:
        return os.cpu_count() or 1
    if not (isinstance(workers, int) and workers > 0):
        raise ConfigError("GRID.workers", "must be an integer >= 0")
    return workers


def evaluate_map(params, cfg, grid, settings=DEFAULT_SETTINGS, workers=1):
    """Medium response on all points of a grid.

    Numerical failures of single cells end up in the flags of that cell and
    never abort the map.

    @param params SystemParams
    @param cfg StandingWaveConfig
    @param grid GridSpec
    @param settings SolverSettings
    @param workers Number of threads, 0 for one per CPU
    @return FieldMap

    """
    proginit.logger.debug("enter evaluate_map()")
    if not isinstance(grid, GridSpec):
        raise ConfigError("GRID", "grid must be <class 'GridSpec'>")
    job = _MapJob(params, cfg, grid, settings)
    workers = min(resolve_workers(workers), grid.ny)

    if workers == 1:
        for j in range(grid.ny):
            job.evaluate_row(j)
    else:
        rows = Queue()
        for j in range(grid.ny):
            rows.put(j)
        evt_abort = Event()
        lst_worker = [MapWorker(job, rows, evt_abort) for _ in range(workers)]
        for th in lst_worker:
            th.start()
        for th in lst_worker:
            th.join()
        for th in lst_worker:
            if th.exception is not None:
                raise th.exception

    fmap = job.result()
    errors = int(np.count_nonzero(fmap.error_mask()))
    if errors:
        proginit.logger.warning(
            "map at delta_p={0} rad/s has {1} cells with errors"
            "".format(params.delta_p, errors)
        )
    proginit.logger.debug("leave evaluate_map()")
    return fmap


def sweep(spec, settings=DEFAULT_SETTINGS, workers=1):
    """One map per probe detuning of a SweepSpec.

    @param spec SweepSpec
    @param settings SolverSettings
    @param workers Number of threads per map
    @return List of FieldMap in the order of spec.delta_p_values

    """
    lst_map = []
    for panel, delta_p in enumerate(spec.delta_p_values):
        proginit.logger.info(
            "sweep panel {0}/{1} delta_p={2} rad/s"
            "".format(panel + 1, len(spec.delta_p_values), delta_p)
        )
        try:
            lst_map.append(
                evaluate_map(spec.params.with_delta_p(delta_p), spec.cfg, spec.grid, settings, workers)
            )
        except NriError as e:
            e.context["panel"] = panel
            raise
    return lst_map
