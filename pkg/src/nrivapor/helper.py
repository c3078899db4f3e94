# -*- coding: utf-8 -*-
"""Helper functions for the whole NriVapor system."""
__author__ = "Sven Sager"
__copyright__ = "Copyright (C) 2023 Sven Sager"
__license__ = "GPLv2"

import math
import os
from dataclasses import dataclass
from tempfile import mkstemp

from scipy.constants import c as C_LIGHT, epsilon_0 as EPSILON_0, hbar as HBAR, mu_0 as MU_0

from . import proginit

BRANCH_LEFTHANDED = "lefthanded"
BRANCH_PRINCIPAL = "principal"
BRANCH_RULES = (BRANCH_LEFTHANDED, BRANCH_PRINCIPAL)

BRANCH_STATEMENTS = {
    BRANCH_LEFTHANDED:
        "n = sqrt(|eps_r*mu_r|) * exp(i*(arg eps_r + arg mu_r)/2), "
        "arguments taken in [-pi/2, 3pi/2)",
    BRANCH_PRINCIPAL:
        "n = sqrt(|eps_r*mu_r|) * exp(i*(arg eps_r + arg mu_r)/2), "
        "arguments taken in (-pi, pi]",
}


@dataclass(frozen=True)
class SolverSettings:
    """Numerical limits and medium switches shared by all modules.

    xi_floor is given in units of gamma_unit**3, the probe_scale in units
    of gamma_unit. All other values are dimensionless.

    """

    xi_floor: float = 1e-12
    condition_bound: float = 1e12
    cm_floor: float = 1e-9
    near_pole: float = 1e-3
    branch_rule: str = BRANCH_LEFTHANDED
    local_field: bool = True
    crosscheck_tolerance: float = 1e-9
    probe_scale: float = 1e-3

    def __post_init__(self):
        for name in (
                "xi_floor", "condition_bound", "cm_floor", "near_pole",
                "crosscheck_tolerance", "probe_scale"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise ValueError("parameter {0} must be a finite number > 0".format(name))
        if self.branch_rule not in BRANCH_RULES:
            raise ValueError(
                "parameter branch_rule must be one of {0}".format(", ".join(BRANCH_RULES))
            )
        if not isinstance(self.local_field, bool):
            raise ValueError("parameter local_field must be <class 'bool'>")


DEFAULT_SETTINGS = SolverSettings()


def fmt_float(value):
    """Full precision decimal of a float which re-parses to the same value.

    @param value Number
    @return Shortest round trip representation, 'nan'/'inf' as is

    """
    return repr(float(value))


def json_float(value):
    """Float for json output, None for non finite values."""
    value = float(value)
    return value if math.isfinite(value) else None


def json_complex(value):
    """Complex number as json object with re/im parts."""
    value = complex(value)
    return {"re": json_float(value.real), "im": json_float(value.imag)}


def dp_label(delta_p_gamma):
    """Label of a probe detuning for file names.
    @param delta_p_gamma Detuning in units of gamma_unit
    @return '4.7', '5.0', ..."""
    return fmt_float(delta_p_gamma)


def out_path(outdir, filename):
    """Join the output directory and a plain file name.

    @param outdir Output directory
    @param filename File name without any directory part
    @return Absolute path inside outdir

    """
    if os.path.basename(filename) != filename or filename in ("", ".", ".."):
        raise ValueError("file name '{0}' would leave the output directory".format(filename))
    return os.path.join(os.path.abspath(outdir), filename)


def write_atomic(path, text):
    """Write text to a file so readers never see partial content.

    The data goes to a temporary file in the same directory, which replaces
    the target after a complete write. On any error the temporary file is
    removed and the exception raised again.

    @param path Target file
    @param text Content

    """
    dirname = os.path.dirname(path) or "."
    fd, tmpname = mkstemp(prefix=".nrivapor_", dir=dirname)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmpname, path)
    except Exception:
        if os.path.exists(tmpname):
            os.remove(tmpname)
        raise
    proginit.logger.info("wrote {0}".format(path))
