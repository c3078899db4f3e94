# -*- coding: utf-8 -*-
"""Shared fixtures of the NriVapor tests."""
import numpy as np
import pytest

from nrivapor.fieldgrid import FieldMap, GridSpec
from nrivapor.runconfig import BUNDLED_CONFIG, emit_config, load_config


@pytest.fixture(scope="session")
def paper_cfg():
    """RunConfig of the bundled parameter set."""
    return load_config(BUNDLED_CONFIG)


@pytest.fixture(scope="session")
def paper_params(paper_cfg):
    return paper_cfg.params


@pytest.fixture(scope="session")
def settings(paper_cfg):
    return paper_cfg.settings


@pytest.fixture
def write_cfg(tmp_path, paper_cfg):
    """Write the bundled config with replaced values to a file.

    Usage: write_cfg({("GRID", "nx"): 5, ...}) returns the file name.

    """

    def _write(overrides=None, name="run.cfg"):
        cfg = paper_cfg.with_value("OUTPUT", "directory", str(tmp_path / "out"))
        for (section, key), value in (overrides or {}).items():
            cfg = cfg.with_value(section, key, value)
        path = tmp_path / name
        path.write_text(emit_config(cfg), encoding="utf-8")
        return str(path)

    return _write


def synthetic_map(values, x_min=0.5, x_max=1.0, y_min=0.5, y_max=1.0, eps=None, mu=None):
    """FieldMap with Re{n} = values on a grid of the same shape.

    eps_r and mu_r default to 1 (vacuum) everywhere.

    """
    values = np.asarray(values, dtype=float)
    ny, nx = values.shape
    grid = GridSpec(x_min, x_max, y_min, y_max, nx, ny)
    ones = np.ones((ny, nx), dtype=complex)
    return FieldMap(
        grid, None, None,
        ones.copy() if eps is None else np.asarray(eps, dtype=complex),
        ones.copy() if mu is None else np.asarray(mu, dtype=complex),
        values + 0j,
        np.zeros((ny, nx), dtype=complex),
        np.zeros((ny, nx), dtype=complex),
        np.zeros((ny, nx), dtype=np.int64),
    )


def paraboloid(nx=101, ny=101, center=(0.75, 0.75)):
    grid = GridSpec(0.5, 1.0, 0.5, 1.0, nx, ny)
    xx, yy = np.meshgrid(grid.xs(), grid.ys())
    return (xx - center[0]) ** 2 + (yy - center[1]) ** 2
