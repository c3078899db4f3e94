# -*- coding: utf-8 -*-
"""Output files and number formatting."""
import json
import math

import numpy as np
import pytest
from conftest import synthetic_map

from nrivapor import datawriter
from nrivapor.fieldgrid import GridSpec, evaluate_map
from nrivapor.helper import fmt_float, json_complex, out_path, write_atomic
from nrivapor.nrianalysis import ContourPolyline, region_metrics


@pytest.mark.parametrize("value", [0.1, 1 / 3, -2.9351e-7, 4.7, 1e300, 5e-324])
def test_fmt_float_round_trip(value):
    assert float(fmt_float(value)) == value


def test_json_complex_non_finite():
    assert json_complex(complex(math.nan, 1.0)) == {"re": None, "im": 1.0}


@pytest.mark.parametrize("name", ["../escape.csv", "sub/map.csv", "", ".."])
def test_out_path_stays_inside(tmp_path, name):
    with pytest.raises(ValueError):
        out_path(str(tmp_path), name)


def test_write_atomic_leaves_no_temp_files(tmp_path):
    path = str(tmp_path / "a.txt")
    write_atomic(path, "first\n")
    write_atomic(path, "second\n")
    assert (tmp_path / "a.txt").read_text() == "second\n"
    assert [p.name for p in tmp_path.iterdir()] == ["a.txt"]


def test_partial_output_removed(tmp_path, monkeypatch):
    calls = []

    def failing(path, text):
        calls.append(path)
        if len(calls) == 2:
            raise OSError("disk full")
        write_atomic(path, text)

    monkeypatch.setattr(datawriter, "write_atomic", failing)
    with pytest.raises(OSError):
        datawriter.write_files(str(tmp_path), [("one.csv", "1\n"), ("two.json", "{}\n")])
    assert list(tmp_path.iterdir()) == []


def test_map_csv_marks_errors():
    fmap = synthetic_map(np.ones((2, 3)))
    fmap.n[1, 2] = complex(math.nan, math.nan)
    fmap.flags[1, 2] = 8
    lines = datawriter.map_csv(fmap).splitlines()
    assert lines[0] == ",".join(datawriter.MAP_HEADER)
    assert len(lines) == 7
    assert lines[1] == "0.5,0.5,1.0,0.0,1.0,0.0,1.0,0.0,"
    assert lines[6].endswith("nan,nan,CMPole")


def test_contours_csv():
    square = ContourPolyline(0.0, ((0.0, 0.0), (1.0, 0.0), (1.0, 1.0)), True)
    line = ContourPolyline(0.0, ((0.5, 0.5), (0.25, 0.75)), False)
    lines = datawriter.contours_csv([square, line]).splitlines()
    assert lines == [
        "contour_id,vertex_id,x_lambda,y_lambda",
        "0,0,0.0,0.0", "0,1,1.0,0.0", "0,2,1.0,1.0",
        "1,0,0.5,0.5", "1,1,0.25,0.75",
    ]


def test_sweep_summary(tmp_path, paper_cfg):
    fmap = evaluate_map(paper_cfg.params, paper_cfg.drive, GridSpec(nx=5, ny=5), paper_cfg.settings)
    metrics = region_metrics(synthetic_map(np.ones((5, 5))))
    paths = datawriter.write_sweep(
        str(tmp_path), paper_cfg, [(4.7, fmap, metrics), (5.0, fmap, metrics)]
    )
    assert sorted(p.name for p in tmp_path.iterdir()) == [
        "map_dp4.7.csv", "map_dp4.7.json", "map_dp5.0.csv", "map_dp5.0.json",
        "sweep_summary.json",
    ]
    assert len(paths) == 5
    summary = json.loads((tmp_path / "sweep_summary.json").read_text())
    assert [p["data"] for p in summary["panels"]] == ["map_dp4.7.csv", "map_dp5.0.csv"]
    assert summary["panels"][0]["double_negative_fraction"] == 0.0
    assert summary["branch_rule"] == "lefthanded"
