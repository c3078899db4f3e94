# -*- coding: utf-8 -*-
"""Run configuration from INI text.

Rates, detunings and Rabi frequencies are written in units of gamma_unit
and multiplied by it when the domain objects are built. RunConfig keeps the
values as written, so emit_config and parse_config reproduce each other.

"""
__author__ = "Sven Sager"
__copyright__ = "Copyright (C) 2023 Sven Sager"
__license__ = "GPLv2"

import math
import os
from configparser import ConfigParser, Error as ParserError
from copy import deepcopy
from dataclasses import dataclass

from . import proginit
from .errors import ConfigError
from .fieldgrid import GridSpec, StandingWaveConfig, SweepSpec
from .helper import BRANCH_RULES, SolverSettings, fmt_float
from .quantumsteady import SystemParams

BUNDLED_CONFIG = os.path.join(os.path.dirname(__file__), "data", "paper-fig2.cfg")

LEVEL_AUTO = "auto"

_REQUIRED = object()

# kind, default, check
_SCHEMA = {
    "SYSTEM": {
        "gamma_unit": ("float", 1e8, "pos"),
        "gamma3": ("float", _REQUIRED, "pos"),
        "gamma4": ("float", _REQUIRED, "pos"),
        "gamma12": ("float", _REQUIRED, "nonneg"),
        "delta_p": ("float", 5.0, None),
        "delta_c": ("float", _REQUIRED, None),
        "delta_s": ("float", _REQUIRED, None),
        "d23": ("float", _REQUIRED, "pos"),
        "mu12": ("float", _REQUIRED, "pos"),
        "density": ("float", _REQUIRED, "pos"),
    },
    "DRIVE": {
        "omega_c0": ("float", _REQUIRED, "nonneg"),
        "omega_s0": ("float", _REQUIRED, "nonneg"),
        "lambda1": ("float", 1.0, "pos"),
        "lambda2": ("float", 1.0, "pos"),
    },
    "GRID": {
        "x_min": ("float", 0.5, None),
        "x_max": ("float", 1.0, None),
        "y_min": ("float", 0.5, None),
        "y_max": ("float", 1.0, None),
        "nx": ("int", 201, "grid"),
        "ny": ("int", 201, "grid"),
        "workers": ("int", 0, "nonneg"),
    },
    "SWEEP": {
        "delta_p_values": ("floatlist", (4.7, 5.0, 5.3, 5.7), None),
    },
    "MEDIUM": {
        "branch_rule": ("choice", BRANCH_RULES[0], BRANCH_RULES),
        "local_field": ("bool", True, None),
        "cm_floor": ("float", 1e-9, "pos"),
        "near_pole": ("float", 1e-3, "pos"),
    },
    "SOLVER": {
        "xi_floor": ("float", 1e-12, "pos"),
        "condition_bound": ("float", 1e12, "pos"),
        "crosscheck_tolerance": ("float", 1e-9, "pos"),
        "probe_scale": ("float", 1e-3, "pos"),
    },
    "ANALYSIS": {
        "reference_x": ("float", 0.75, None),
        "reference_y": ("float", 0.75, None),
        "level": ("level", LEVEL_AUTO, None),
        "isotropy_threshold": ("float", 0.05, "pos"),
    },
    "CHECK": {
        "rate_min": ("float", 0.01, "pos"),
        "rate_max": ("float", 1.0, "pos"),
        "detuning_max": ("float", 10.0, "nonneg"),
        "rabi_max": ("float", 12.0, "nonneg"),
    },
    "OUTPUT": {
        "directory": ("str", "nrivapor-out", None),
    },
}


def _parse_value(section, key, kind):
    """Convert one raw value of a ConfigParser section."""
    path = "{0}.{1}".format(section.name, key)
    try:
        if kind == "float":
            value = section.getfloat(key)
        elif kind == "int":
            value = section.getint(key)
        elif kind == "bool":
            value = section.getboolean(key)
        elif kind == "floatlist":
            value = tuple(float(v) for v in section.get(key).split(",") if v.strip())
        elif kind == "level":
            raw = section.get(key).strip()
            value = LEVEL_AUTO if raw.lower() == LEVEL_AUTO else float(raw)
        elif kind == "choice":
            value = section.get(key).strip().lower()
        else:
            value = section.get(key).strip()
    except ValueError:
        raise ConfigError(path, "can not convert '{0}' to {1}".format(section.get(key), kind))
    return value


def _check_value(path, kind, value, check):
    if kind in ("float", "level", "floatlist"):
        lst_value = value if kind == "floatlist" else (value,)
        for v in lst_value:
            if v == LEVEL_AUTO:
                continue
            if not math.isfinite(v):
                raise ConfigError(path, "must be a finite number")
            if check == "pos" and not v > 0:
                raise ConfigError(path, "must be > 0")
            if check == "nonneg" and not v >= 0:
                raise ConfigError(path, "must be >= 0")
    elif kind == "int":
        if check == "grid" and value < 2:
            raise ConfigError(path, "must be an integer >= 2")
        if check == "nonneg" and value < 0:
            raise ConfigError(path, "must be >= 0")
    elif kind == "choice" and value not in check:
        raise ConfigError(path, "must be one of {0}".format(", ".join(check)))
    elif kind == "str" and not value:
        raise ConfigError(path, "must not be empty")


@dataclass(frozen=True)
class RunConfig:
    """Validated configuration with the values as written in the file.

    values maps section -> key -> value. The domain objects are built on
    access and always reflect the current values.

    """

    values: dict

    def __post_init__(self):
        # Build every domain object once to report violated invariants
        for name in ("params", "drive", "grid", "sweep", "settings"):
            getattr(self, name)
        if self.get("CHECK", "rate_min") > self.get("CHECK", "rate_max"):
            raise ConfigError("CHECK.rate_max", "must be >= rate_min")

    def get(self, section, key):
        return self.values[section][key]

    def with_value(self, section, key, value):
        """Copy with one value replaced and validated again."""
        if section not in _SCHEMA or key not in _SCHEMA[section]:
            raise ConfigError("{0}.{1}".format(section, key), "unknown key")
        kind, _, check = _SCHEMA[section][key]
        path = "{0}.{1}".format(section, key)
        _check_value(path, kind, value, check)
        values = deepcopy(self.values)
        values[section][key] = value
        return RunConfig(values)

    @property
    def gamma_unit(self):
        return self.get("SYSTEM", "gamma_unit")

    @property
    def params(self):
        """SystemParams in rad/s."""
        system = self.values["SYSTEM"]
        g = system["gamma_unit"]
        try:
            return SystemParams(
                gamma3=system["gamma3"] * g,
                gamma4=system["gamma4"] * g,
                gamma12=system["gamma12"] * g,
                delta_p=system["delta_p"] * g,
                delta_c=system["delta_c"] * g,
                delta_s=system["delta_s"] * g,
                d23=system["d23"],
                mu12=system["mu12"],
                density=system["density"],
                gamma_unit=g,
            )
        except ValueError as e:
            if isinstance(e, ConfigError):
                raise
            raise ConfigError("SYSTEM", str(e))

    @property
    def drive(self):
        """StandingWaveConfig in rad/s."""
        drv = self.values["DRIVE"]
        try:
            return StandingWaveConfig(
                drv["omega_c0"] * self.gamma_unit,
                drv["omega_s0"] * self.gamma_unit,
                drv["lambda1"],
                drv["lambda2"],
            )
        except ValueError as e:
            if isinstance(e, ConfigError):
                raise
            raise ConfigError("DRIVE", str(e))

    @property
    def grid(self):
        grd = self.values["GRID"]
        return GridSpec(
            grd["x_min"], grd["x_max"], grd["y_min"], grd["y_max"], grd["nx"], grd["ny"]
        )

    @property
    def workers(self):
        return self.get("GRID", "workers")

    @property
    def sweep(self):
        """SweepSpec with the detunings in rad/s."""
        return SweepSpec(
            tuple(v * self.gamma_unit for v in self.get("SWEEP", "delta_p_values")),
            self.params, self.drive, self.grid,
        )

    @property
    def settings(self):
        med = self.values["MEDIUM"]
        sol = self.values["SOLVER"]
        try:
            return SolverSettings(
                xi_floor=sol["xi_floor"],
                condition_bound=sol["condition_bound"],
                cm_floor=med["cm_floor"],
                near_pole=med["near_pole"],
                branch_rule=med["branch_rule"],
                local_field=med["local_field"],
                crosscheck_tolerance=sol["crosscheck_tolerance"],
                probe_scale=sol["probe_scale"],
            )
        except ValueError as e:
            raise ConfigError("SOLVER", str(e))

    @property
    def reference(self):
        return self.get("ANALYSIS", "reference_x"), self.get("ANALYSIS", "reference_y")

    @property
    def level(self):
        """Contour level of Re{n} or LEVEL_AUTO."""
        return self.get("ANALYSIS", "level")

    @property
    def isotropy_threshold(self):
        return self.get("ANALYSIS", "isotropy_threshold")

    @property
    def outdir(self):
        return self.get("OUTPUT", "directory")


def parse_config(text):
    """Validated RunConfig from INI text.

    @param text Content of a configuration file
    @return RunConfig
    @raise ConfigError naming SECTION.key on every problem

    """
    # A [DEFAULT] section is treated like any other unknown section
    cp = ConfigParser(interpolation=None, default_section="__none__")
    try:
        cp.read_string(text)
    except ParserError as e:
        raise ConfigError("config", "syntax error: {0}".format(e.message))

    for name in cp.sections():
        if name not in _SCHEMA:
            raise ConfigError(name, "unknown section")

    values = {}
    for name, schema in _SCHEMA.items():
        section = cp[name] if cp.has_section(name) else None
        if section is not None:
            for key in section:
                if key not in schema:
                    raise ConfigError("{0}.{1}".format(name, key), "unknown key")

        values[name] = {}
        for key, (kind, default, check) in schema.items():
            path = "{0}.{1}".format(name, key)
            if section is None or key not in section:
                if default is _REQUIRED:
                    raise ConfigError(path, "missing required key")
                value = default
            else:
                value = _parse_value(section, key, kind)
                _check_value(path, kind, value, check)
            values[name][key] = value

    return RunConfig(values)


def _emit_value(kind, value):
    if kind == "float":
        return fmt_float(value)
    if kind == "floatlist":
        return ", ".join(fmt_float(v) for v in value)
    if kind == "level":
        return value if value == LEVEL_AUTO else fmt_float(value)
    if kind == "bool":
        return "yes" if value else "no"
    return str(value)


def emit_config(cfg):
    """INI text of a RunConfig with every key written out.

    @param cfg RunConfig
    @return Text which parse_config turns into an equal RunConfig

    """
    lst_line = []
    for name, schema in _SCHEMA.items():
        lst_line.append("[{0}]".format(name))
        for key, (kind, _, _) in schema.items():
            lst_line.append("{0} = {1}".format(key, _emit_value(kind, cfg.get(name, key))))
        lst_line.append("")
    return "\n".join(lst_line)


def config_echo(cfg):
    """Configuration as nested dict for json provenance records."""
    return {
        name: {
            key: list(value) if isinstance(value, tuple) else value
            for key, value in section.items()
        }
        for name, section in cfg.values.items()
    }


def resolve_config_path(path=None):
    """Configuration file by argument, environment variable or bundled default."""
    if path:
        return path
    env = os.environ.get(proginit.CONFIG_ENV)
    if env:
        return os.path.abspath(env)
    return BUNDLED_CONFIG


def load_config(path=None):
    """Read and validate a configuration file.

    @param path File name, see resolve_config_path for None
    @return RunConfig

    """
    path = resolve_config_path(path)
    proginit.logger.info("loading config file: {0}".format(path))
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise ConfigError("config", "can not read file {0}: {1}".format(path, e.strerror))
    return parse_config(text)
