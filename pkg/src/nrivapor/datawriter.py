# -*- coding: utf-8 -*-
"""CSV and JSON files of maps, contours and analysis results.

All numbers are written with the shortest decimal which parses back to the
same float. No file contains time stamps, so equal input gives equal bytes.

"""
__author__ = "Sven Sager"
__copyright__ = "Copyright (C) 2023 Sven Sager"
__license__ = "GPLv2"

import csv
import io
import json
import os

from . import __version__, proginit
from .helper import (
    BRANCH_STATEMENTS, dp_label, fmt_float, json_complex, json_float, out_path,
    write_atomic,
)
from .mediumresponse import flag_names
from .runconfig import config_echo

MAP_HEADER = ("x_lambda", "y_lambda", "re_eps", "im_eps", "re_mu", "im_mu", "re_n", "im_n", "flags")
CONTOUR_HEADER = ("contour_id", "vertex_id", "x_lambda", "y_lambda")
PROFILE_HEADER = ("coordinate_lambda", "re_eps", "re_mu", "re_n", "flags")


def _csv_text(header, rows):
    buff = io.StringIO()
    writer = csv.writer(buff, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buff.getvalue()


def _json_text(obj):
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def _flags_text(flags):
    return "|".join(flag_names(flags))


def _xy(point):
    return [json_float(point[0]), json_float(point[1])]


def write_files(outdir, files):
    """Write several files, none of them stays behind if one fails.

    @param outdir Output directory, created if missing
    @param files List of (file name, text)
    @return List of written paths

    """
    os.makedirs(outdir, exist_ok=True)
    lst_path = [out_path(outdir, name) for name, _ in files]
    lst_done = []
    try:
        for path, (_, text) in zip(lst_path, files):
            write_atomic(path, text)
            lst_done.append(path)
    except Exception:
        for path in lst_done:
            proginit.logger.warning("removing partial output {0}".format(path))
            os.remove(path)
        raise
    return lst_path


def map_csv(fmap):
    """CSV text of a map in row-major order, x runs fastest."""
    xs, ys = fmap.xs, fmap.ys

    def rows():
        for j in range(fmap.grid.ny):
            for i in range(fmap.grid.nx):
                eps, mu, n = fmap.eps_r[j, i], fmap.mu_r[j, i], fmap.n[j, i]
                yield (
                    fmt_float(xs[i]), fmt_float(ys[j]),
                    fmt_float(eps.real), fmt_float(eps.imag),
                    fmt_float(mu.real), fmt_float(mu.imag),
                    fmt_float(n.real), fmt_float(n.imag),
                    _flags_text(fmap.flags[j, i]),
                )

    return _csv_text(MAP_HEADER, rows())


def map_sidecar(fmap, cfg, csv_name, delta_p_gamma):
    """Provenance record of a map.

    @param fmap FieldMap
    @param cfg RunConfig the map was computed from
    @param csv_name File name of the data
    @param delta_p_gamma Probe detuning as written in the config
    @return dict for json output

    """
    settings = cfg.settings
    return {
        "program": "nrivapor",
        "version": __version__,
        "data": csv_name,
        "delta_p_gamma": delta_p_gamma,
        "delta_p_rad_s": fmap.delta_p,
        "nx": fmap.grid.nx,
        "ny": fmap.grid.ny,
        "branch_rule": settings.branch_rule,
        "branch_statement": BRANCH_STATEMENTS[settings.branch_rule],
        "local_field": settings.local_field,
        "error_cells": [
            {"i": i, "j": j, "flags": flag_names(flags)}
            for i, j, flags in fmap.error_cells()
        ],
        "config": config_echo(cfg),
    }


def map_files(fmap, cfg, delta_p_gamma):
    """map_dp<v>.csv and map_dp<v>.json of one map.
    @param delta_p_gamma Probe detuning in units of gamma_unit for the names
    @return List of (file name, text)"""
    label = dp_label(delta_p_gamma)
    csv_name = "map_dp{0}.csv".format(label)
    return [
        (csv_name, map_csv(fmap)),
        ("map_dp{0}.json".format(label), _json_text(map_sidecar(fmap, cfg, csv_name, delta_p_gamma))),
    ]


def write_map(fmap, cfg, outdir, delta_p_gamma):
    """Write the files of map_files.
    @return List of written paths"""
    return write_files(outdir, map_files(fmap, cfg, delta_p_gamma))


def contours_csv(contours):
    """CSV text of polylines, closed ones without repeated first vertex."""
    rows = [
        (cid, vid, fmt_float(x), fmt_float(y))
        for cid, contour in enumerate(contours)
        for vid, (x, y) in enumerate(contour.points)
    ]
    return _csv_text(CONTOUR_HEADER, rows)


def metrics_record(metrics):
    """RegionMetrics as dict for json output."""
    return {
        "double_negative_fraction": json_float(metrics.double_negative_fraction),
        "min_re_n": json_float(metrics.min_re_n),
        "argmin": _xy(metrics.argmin),
        "reference": _xy(metrics.reference),
        "n_at_reference": json_complex(metrics.n_at_reference),
        "min_re_eps": json_float(metrics.min_re_eps),
        "argmin_eps": _xy(metrics.argmin_eps),
        "min_re_mu": json_float(metrics.min_re_mu),
        "argmin_mu": _xy(metrics.argmin_mu),
        "eps_at_reference": json_complex(metrics.eps_at_reference),
        "mu_at_reference": json_complex(metrics.mu_at_reference),
    }


def fit_record(fit):
    if fit is None:
        return None
    return {
        "center_x": json_float(fit.center_x),
        "center_y": json_float(fit.center_y),
        "radius": json_float(fit.radius),
        "rms_residual": json_float(fit.rms_residual),
        "isotropy": json_float(fit.isotropy),
    }


def write_contours(outdir, cfg, delta_p_gamma, level, contours, innermost, fit, metrics, error=None):
    """contours_dp<v>.csv and analysis_dp<v>.json.

    @param innermost ContourPolyline or None
    @param fit CircleFitResult or None
    @param error Name of the error which stopped the analysis
    @return List of written paths

    """
    label = dp_label(delta_p_gamma)
    inner = None
    if innermost is not None:
        inner = {
            "contour_id": next(i for i, c in enumerate(contours) if c is innermost),
            "vertices": len(innermost.points),
            "area": json_float(innermost.area()),
        }
    analysis = {
        "program": "nrivapor",
        "version": __version__,
        "delta_p_gamma": delta_p_gamma,
        "level": json_float(level),
        "contours": len(contours),
        "closed_contours": sum(1 for c in contours if c.closed),
        "innermost": inner,
        "fit": fit_record(fit),
        "isotropy_threshold": cfg.isotropy_threshold,
        "isotropic": None if fit is None else fit.is_isotropic(cfg.isotropy_threshold),
        "metrics": metrics_record(metrics),
        "error": error,
    }
    return write_files(outdir, [
        ("contours_dp{0}.csv".format(label), contours_csv(contours)),
        ("analysis_dp{0}.json".format(label), _json_text(analysis)),
    ])


def write_profile(outdir, delta_p_gamma, profile):
    """profile_<axis>_dp<v>.csv of a LineProfile."""
    rows = [
        (fmt_float(c), fmt_float(e), fmt_float(m), fmt_float(n), _flags_text(f))
        for c, e, m, n, f in zip(
            profile.coordinates, profile.re_eps, profile.re_mu, profile.re_n, profile.flags
        )
    ]
    name = "profile_{0}_dp{1}.csv".format(profile.axis, dp_label(delta_p_gamma))
    return write_files(outdir, [(name, _csv_text(PROFILE_HEADER, rows))])


def sweep_summary(cfg, entries):
    """Content of sweep_summary.json with the region metrics of every panel.

    @param entries List of (delta_p_gamma, RegionMetrics)
    @return dict for json output

    """
    summary = {
        "program": "nrivapor",
        "version": __version__,
        "branch_rule": cfg.settings.branch_rule,
        "reference": [cfg.reference[0], cfg.reference[1]],
        "panels": [
            dict(delta_p_gamma=dp, data="map_dp{0}.csv".format(dp_label(dp)), **metrics_record(m))
            for dp, m in entries
        ],
    }
    return summary


def write_sweep(outdir, cfg, panels):
    """All maps of a sweep and sweep_summary.json in one go.

    Either every file is written or none of them stays behind.

    @param panels List of (delta_p_gamma, FieldMap, RegionMetrics)
    @return List of written paths

    """
    files = []
    for delta_p_gamma, fmap, _ in panels:
        files.extend(map_files(fmap, cfg, delta_p_gamma))
    summary = sweep_summary(cfg, [(dp, metrics) for dp, _, metrics in panels])
    files.append(("sweep_summary.json", _json_text(summary)))
    return write_files(outdir, files)
