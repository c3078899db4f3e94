# -*- coding: utf-8 -*-
"""Negative refractive index of a standing-wave driven atomic vapor.

Stellt das Kommandozeilenprogramm nrivapor bereit. Aus einer
Konfigurationsdatei werden die Antwort des Mediums an einem Punkt, ganze
Karten ueber x und y, Serien ueber die Probe-Verstimmung, Konturen von Re{n}
mit Kreisfit und Schnitte entlang einer Achse berechnet. Der Befehl check
vergleicht die geschlossenen Formeln mit der linearen Loesung.

Alle Dateien landen im Ausgabeverzeichnis, nur point schreibt einen
JSON-Datensatz auf stdout. Logmeldungen gehen auf stderr.

"""
__author__ = "Sven Sager"
__copyright__ = "Copyright (C) 2023 Sven Sager"
__license__ = "GPLv2"

import json
import math

from . import datawriter
from . import proginit
from .checksystem import CheckSystem
from .errors import (
    ComputationError, DegenerateFit, EXIT_COMPUTATION, EXIT_NO_CONTOUR, EXIT_OK,
    NoEnclosingContour, NriError,
)
from .fieldgrid import evaluate_map, local_rabi, sweep
from .helper import json_complex, json_float
from .mediumresponse import flag_names, sample_with_polarizabilities
from .nrianalysis import (
    extract_contours, fit_circle, innermost_contour, line_profile, region_metrics,
)
from .runconfig import LEVEL_AUTO, load_config

AUTO_LEVEL_FRACTION = 0.9
"""Automatic contour level as fraction of Re{n} at the reference point."""


class NriVapor:
    """Hauptklasse, die alle Befehle zur Verfuegung stellt."""

    def __init__(self, pargs):
        """Init NriVapor class.

        @param pargs Parsed arguments of proginit.configure()

        """
        proginit.logger.debug("enter NriVapor.__init__()")
        self.pargs = pargs

        cfg = load_config(proginit.conffile)
        if getattr(pargs, "outdir", None):
            cfg = cfg.with_value("OUTPUT", "directory", pargs.outdir)
        if getattr(pargs, "workers", None) is not None:
            cfg = cfg.with_value("GRID", "workers", pargs.workers)
        if getattr(pargs, "delta_p", None) is not None:
            cfg = cfg.with_value("SYSTEM", "delta_p", float(pargs.delta_p))
        if getattr(pargs, "level", None) is not None:
            cfg = cfg.with_value("ANALYSIS", "level", float(pargs.level))
        self.cfg = cfg

        proginit.logger.debug("leave NriVapor.__init__()")

    @property
    def delta_p_gamma(self):
        return self.cfg.get("SYSTEM", "delta_p")

    def _map(self, delta_p_gamma):
        params = self.cfg.params.with_delta_p(delta_p_gamma * self.cfg.gamma_unit)
        return evaluate_map(
            params, self.cfg.drive, self.cfg.grid, self.cfg.settings, self.cfg.workers
        )

    def cmd_point(self, x, y):
        """Print the response at one point as JSON object.
        @return Exit code"""
        proginit.logger.debug("enter NriVapor.cmd_point()")
        params = self.cfg.params
        drive = local_rabi(self.cfg.drive, x, y)
        record = {
            "x_lambda": x,
            "y_lambda": y,
            "delta_p_gamma": self.delta_p_gamma,
            "omega_c": json_float(drive.omega_c),
            "omega_s": json_float(drive.omega_s),
            "gamma_e": None,
            "gamma_m": None,
            "eps_r": None,
            "mu_r": None,
            "n": None,
            "flags": [],
            "error": None,
        }
        ec = EXIT_OK
        try:
            sample, pol = sample_with_polarizabilities(
                params, drive, self.cfg.settings, x=x, y=y
            )
        except ComputationError as e:
            proginit.logger.error("{0} at ({1}, {2}): {3}".format(e.name, x, y, e))
            record["error"] = e.name
            record["message"] = str(e)
            record["flags"] = [e.name]
            ec = EXIT_COMPUTATION
        else:
            record["gamma_e"] = json_complex(pol.gamma_e)
            record["gamma_m"] = json_complex(pol.gamma_m)
            record["eps_r"] = json_complex(sample.eps_r)
            record["mu_r"] = json_complex(sample.mu_r)
            record["n"] = json_complex(sample.n)
            record["flags"] = flag_names(sample.flags)

        print(json.dumps(record))
        proginit.logger.debug("leave NriVapor.cmd_point()")
        return ec

    def cmd_map(self):
        """Write one map with sidecar.
        @return Exit code"""
        fmap = self._map(self.delta_p_gamma)
        datawriter.write_map(fmap, self.cfg, self.cfg.outdir, self.delta_p_gamma)
        return EXIT_OK

    def cmd_sweep(self):
        """Write one map per [SWEEP] detuning and the summary.
        @return Exit code"""
        lst_dp = self.cfg.get("SWEEP", "delta_p_values")
        lst_map = sweep(self.cfg.sweep, self.cfg.settings, self.cfg.workers)
        lst_panel = [
            (delta_p_gamma, fmap, region_metrics(fmap, self.cfg.reference))
            for delta_p_gamma, fmap in zip(lst_dp, lst_map)
        ]
        datawriter.write_sweep(self.cfg.outdir, self.cfg, lst_panel)
        return EXIT_OK

    def cmd_contours(self):
        """Contours of Re{n}, innermost circle fit and region metrics.
        @return Exit code, 4 if no contour encloses the reference point"""
        proginit.logger.debug("enter NriVapor.cmd_contours()")
        delta_p_gamma = self.delta_p_gamma
        fmap = self._map(delta_p_gamma)
        metrics = region_metrics(fmap, self.cfg.reference)

        level = self.cfg.level
        if level == LEVEL_AUTO:
            level = AUTO_LEVEL_FRACTION * metrics.n_at_reference.real
            if not math.isfinite(level):
                raise ComputationError(
                    "Re{n} at the reference point is not finite",
                    reference=list(self.cfg.reference), delta_p=delta_p_gamma,
                )
            proginit.logger.info("automatic contour level {0}".format(level))

        contours = extract_contours(fmap, level)
        innermost = fit = error = None
        ec = EXIT_OK
        try:
            innermost = innermost_contour(contours, self.cfg.reference)
            fit = fit_circle(innermost)
        except NoEnclosingContour as e:
            proginit.logger.error(str(e))
            error, ec = e.name, e.exitcode
        except DegenerateFit as e:
            proginit.logger.error(str(e))
            error, ec = e.name, e.exitcode

        if fit is not None:
            proginit.logger.info(
                "circle fit center ({0:.6f}, {1:.6f}) radius {2:.6f} isotropy {3:.4g}"
                "".format(fit.center_x, fit.center_y, fit.radius, fit.isotropy)
            )
            if not fit.is_isotropic(self.cfg.isotropy_threshold):
                proginit.logger.warning(
                    "innermost contour is not isotropic: {0:.4g} > {1}"
                    "".format(fit.isotropy, self.cfg.isotropy_threshold)
                )

        datawriter.write_contours(
            self.cfg.outdir, self.cfg, delta_p_gamma, level, contours, innermost,
            fit, metrics, error,
        )
        proginit.logger.debug("leave NriVapor.cmd_contours()")
        return ec

    def cmd_profile(self, axis, at=None):
        """Cut through the map along one axis.
        @param axis 'x' or 'y'
        @param at Fixed coordinate, reference point if None
        @return Exit code"""
        if at is None:
            at = self.cfg.reference[1] if axis == "x" else self.cfg.reference[0]
        fmap = self._map(self.delta_p_gamma)
        datawriter.write_profile(
            self.cfg.outdir, self.delta_p_gamma, line_profile(fmap, axis, at)
        )
        return EXIT_OK

    def cmd_check(self, draws, seed, complex_probe=False):
        """Randomized check of the closed forms.
        @return Exit code, 5 on discrepancies"""
        return CheckSystem(self.cfg, draws, seed, complex_probe).start()

    def start(self):
        """Run the command of the parsed arguments.
        @return Exit code"""
        proginit.logger.debug("enter NriVapor.start()")
        command = self.pargs.command
        proginit.logger.info("starting command {0}".format(command))

        if command == "point":
            ec = self.cmd_point(self.pargs.x, self.pargs.y)
        elif command == "map":
            ec = self.cmd_map()
        elif command == "sweep":
            ec = self.cmd_sweep()
        elif command == "contours":
            ec = self.cmd_contours()
        elif command == "profile":
            ec = self.cmd_profile(self.pargs.axis, self.pargs.at)
        elif command == "check":
            ec = self.cmd_check(self.pargs.draws, self.pargs.seed, self.pargs.complex_probe)
        else:
            raise ValueError("unknown command '{0}'".format(command))

        proginit.logger.debug("leave NriVapor.start()")
        return ec


def main(argv=None) -> int:
    """Entry point for NriVapor."""
    # Programmeinstellungen konfigurieren
    proginit.configure(argv)

    try:
        root = NriVapor(proginit.pargs)
        ec = root.start()
    except NriError as e:
        proginit.logger.error("{0}: {1}".format(e.name, e))
        ec = e.exitcode
    finally:
        # Aufräumen
        proginit.cleanup()

    return ec


if __name__ == '__main__':
    import sys

    sys.exit(main())
