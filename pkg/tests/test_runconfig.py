# -*- coding: utf-8 -*-
"""Parsing, validation and emission of run configurations."""
import pytest

from nrivapor import proginit
from nrivapor.errors import ConfigError
from nrivapor.helper import BRANCH_PRINCIPAL
from nrivapor.runconfig import (
    BUNDLED_CONFIG, LEVEL_AUTO, emit_config, load_config, parse_config, resolve_config_path,
)

G = 1e8


def replace_line(text, old, new):
    assert old in text
    return text.replace(old, new, 1)


@pytest.fixture(scope="module")
def paper_text(paper_cfg):
    return emit_config(paper_cfg)


def test_bundled_values(paper_cfg):
    params = paper_cfg.params
    assert params.gamma3 == pytest.approx(0.3 * G, rel=1e-15)
    assert params.gamma4 == pytest.approx(0.1 * G, rel=1e-15)
    assert params.delta_p == pytest.approx(5.0 * G, rel=1e-15)
    assert params.delta_c == -params.delta_s
    assert params.delta_c == pytest.approx(-0.15 * G, rel=1e-15)
    assert paper_cfg.drive.omega_c0 == pytest.approx(10.2 * G, rel=1e-15)
    assert paper_cfg.drive.omega_s0 == pytest.approx(9.5 * G, rel=1e-15)
    assert paper_cfg.level == LEVEL_AUTO
    assert paper_cfg.reference == (0.75, 0.75)
    assert paper_cfg.get("SWEEP", "delta_p_values") == (4.7, 5.0, 5.3, 5.7)
    assert paper_cfg.settings.local_field is True


def test_sweep_in_rad_per_second(paper_cfg):
    values = paper_cfg.sweep.delta_p_values
    assert values == pytest.approx((4.7 * G, 5.0 * G, 5.3 * G, 5.7 * G), rel=1e-15)


def test_round_trip(paper_cfg, paper_text):
    assert parse_config(paper_text) == paper_cfg
    assert emit_config(parse_config(paper_text)) == paper_text


def test_missing_required_key(paper_text):
    text = replace_line(paper_text, "density = 2e+23\n", "")
    with pytest.raises(ConfigError) as exc:
        parse_config(text)
    assert exc.value.key == "SYSTEM.density"


def test_defaults_fill_optional_keys():
    text = "\n".join([
        "[SYSTEM]", "gamma3 = 0.3", "gamma4 = 0.1", "gamma12 = 0.001",
        "delta_c = -0.15", "delta_s = 0.15", "d23 = 3e-29", "mu12 = 1.3e-22",
        "density = 2e23",
        "[DRIVE]", "omega_c0 = 10.2", "omega_s0 = 9.5",
    ])
    cfg = parse_config(text)
    assert cfg.gamma_unit == 1e8
    assert cfg.get("SYSTEM", "delta_p") == 5.0
    assert cfg.grid.nx == 201
    assert cfg.outdir == "nrivapor-out"


@pytest.mark.parametrize("old, new, key", [
    ("nx = 201\n", "nx = 1\n", "GRID.nx"),
    ("nx = 201\n", "nx = many\n", "GRID.nx"),
    ("gamma3 = 0.3\n", "gamma3 = 0.0\n", "SYSTEM.gamma3"),
    ("gamma4 = 0.1\n", "gamma4 = nan\n", "SYSTEM.gamma4"),
    ("omega_c0 = 10.2\n", "omega_c0 = -1.0\n", "DRIVE.omega_c0"),
    ("branch_rule = lefthanded\n", "branch_rule = other\n", "MEDIUM.branch_rule"),
    ("workers = 0\n", "workers = -2\n", "GRID.workers"),
    ("x_max = 1.0\n", "x_max = 0.25\n", "GRID.x_max"),
    ("rate_min = 0.01\n", "rate_min = 2.0\n", "CHECK.rate_max"),
])
def test_invalid_values(paper_text, old, new, key):
    with pytest.raises(ConfigError) as exc:
        parse_config(replace_line(paper_text, old, new))
    assert exc.value.key == key


def test_unknown_key(paper_text):
    text = replace_line(paper_text, "[GRID]\n", "[GRID]\nnz = 3\n")
    with pytest.raises(ConfigError) as exc:
        parse_config(text)
    assert exc.value.key == "GRID.nz"


@pytest.mark.parametrize("section", ["EXTRA", "DEFAULT"])
def test_unknown_section(paper_text, section):
    with pytest.raises(ConfigError) as exc:
        parse_config(paper_text + "\n[{0}]\nvalue = 1\n".format(section))
    assert exc.value.key == section


def test_syntax_error():
    with pytest.raises(ConfigError) as exc:
        parse_config("no section header\n")
    assert exc.value.key == "config"


def test_level_and_bool_values(paper_text):
    text = replace_line(paper_text, "level = auto\n", "level = -2.5\n")
    text = replace_line(text, "local_field = yes\n", "local_field = off\n")
    text = replace_line(text, "branch_rule = lefthanded\n", "branch_rule = Principal\n")
    cfg = parse_config(text)
    assert cfg.level == -2.5
    assert cfg.settings.local_field is False
    assert cfg.settings.branch_rule == BRANCH_PRINCIPAL


def test_with_value_validates(paper_cfg):
    cfg = paper_cfg.with_value("GRID", "nx", 7)
    assert cfg.grid.nx == 7
    assert paper_cfg.grid.nx == 201
    with pytest.raises(ConfigError):
        paper_cfg.with_value("GRID", "nx", 1)
    with pytest.raises(ConfigError):
        paper_cfg.with_value("GRID", "nz", 3)


def test_resolve_config_path(monkeypatch, tmp_path):
    monkeypatch.delenv(proginit.CONFIG_ENV, raising=False)
    assert resolve_config_path() == BUNDLED_CONFIG
    assert resolve_config_path("given.cfg") == "given.cfg"
    monkeypatch.setenv(proginit.CONFIG_ENV, str(tmp_path / "env.cfg"))
    assert resolve_config_path() == str(tmp_path / "env.cfg")


def test_load_from_environment(monkeypatch, write_cfg):
    path = write_cfg({("GRID", "nx"): 5})
    monkeypatch.setenv(proginit.CONFIG_ENV, path)
    assert load_config().grid.nx == 5


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError) as exc:
        load_config(str(tmp_path / "missing.cfg"))
    assert exc.value.key == "config"
