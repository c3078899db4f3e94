# -*- coding: utf-8 -*-
"""Compare the closed-form amplitudes with the linear solve and print results."""
__author__ = "Sven Sager"
__copyright__ = "Copyright (C) 2023 Sven Sager"
__license__ = "GPLv2"

from dataclasses import dataclass, field

import numpy as np

from . import proginit
from .errors import ConfigError, EXIT_DISCREPANCY, EXIT_OK, NearSingular, SingularSystem
from .quantumsteady import (
    LocalDrive, SystemParams, probe_from_electric, steady_closed_form,
    steady_linear_solve,
)

newline = "\n------------------------------------------------------------\n"


def relative_difference(a, b):
    """|a - b| / max(|a|, |b|), 0.0 if both are zero."""
    scale = max(abs(a), abs(b))
    if scale == 0:
        return 0.0
    return abs(a - b) / scale


@dataclass(frozen=True)
class DiscrepancyRecord:
    """One amplitude where closed form and linear solve disagree."""

    context: dict
    quantity: str
    closed_form: complex
    oracle: complex
    relative_difference: float

    def __str__(self):
        return "{0} draw={1} delta_p={2:.6g}: closed form {3:.12g} != solve {4:.12g} " \
               "(rel. diff {5:.3e})".format(
                   self.quantity, self.context.get("draw"), self.context.get("delta_p", 0.0),
                   self.closed_form, self.oracle, self.relative_difference,
               )


@dataclass
class CheckReport:
    draws: int
    passed: int = 0
    skipped: int = 0
    records: list = field(default_factory=list)

    @property
    def exitcode(self):
        return EXIT_DISCREPANCY if self.records else EXIT_OK


class CheckSystem:
    """Randomized comparison of both steady state routes."""

    def __init__(self, cfg, draws=1000, seed=1, complex_probe=False):
        """Init CheckSystem class.

        @param cfg RunConfig with the [CHECK] ranges and the solver settings
        @param draws Number of random parameter sets, >= 1
        @param seed Seed of the random generator
        @param complex_probe Give the probe a random phase, the closed forms
               then disagree with the solve in a2

        """
        if not (isinstance(draws, int) and draws >= 1):
            raise ConfigError("draws", "must be an integer >= 1")
        self.cfg = cfg
        self.draws = draws
        self.seed = seed
        self.complex_probe = complex_probe
        self.settings = cfg.settings

    def draw(self, rng):
        """Random system, drive and probe within the [CHECK] ranges.
        @return Tuple (SystemParams, LocalDrive, ProbeDrive)"""
        g = self.cfg.gamma_unit
        rate_min = self.cfg.get("CHECK", "rate_min")
        rate_max = self.cfg.get("CHECK", "rate_max")
        det = self.cfg.get("CHECK", "detuning_max")
        rabi = self.cfg.get("CHECK", "rabi_max")
        base = self.cfg.params

        rates = rng.uniform(rate_min, rate_max, 3) * g
        detunings = rng.uniform(-det, det, 3) * g
        params = SystemParams(
            gamma3=float(rates[0]), gamma4=float(rates[1]), gamma12=float(rates[2]),
            delta_p=float(detunings[0]), delta_c=float(detunings[1]),
            delta_s=float(detunings[2]),
            d23=base.d23, mu12=base.mu12, density=base.density, gamma_unit=g,
        )
        amplitude = rng.uniform(0.0, rabi, 2) * g
        phase = rng.uniform(-np.pi, np.pi, 2)
        drive = LocalDrive(
            complex(amplitude[0] * np.exp(1j * phase[0])),
            complex(amplitude[1] * np.exp(1j * phase[1])),
        )
        # The printed closed forms use Omega_pB where the equations of
        # motion have its conjugate, both agree for a real probe only
        strength = self.settings.probe_scale * g * rng.uniform(0.1, 1.0)
        if self.complex_probe:
            strength = complex(strength * np.exp(1j * rng.uniform(-np.pi, np.pi)))
        else:
            strength = float(strength)
        probe = probe_from_electric(params, strength)
        return params, drive, probe

    def compare(self, draw, params, drive, probe):
        """Records of all amplitudes which differ more than the tolerance."""
        closed = steady_closed_form(params, drive, probe, self.settings)
        oracle = steady_linear_solve(params, drive, probe, self.settings)
        lst_record = []
        for name in ("a2", "a3", "a4"):
            cf = getattr(closed, name)
            ls = getattr(oracle, name)
            diff = relative_difference(cf, ls)
            if diff > self.settings.crosscheck_tolerance:
                lst_record.append(DiscrepancyRecord(
                    context={
                        "operation": "steady_closed_form",
                        "draw": draw,
                        "delta_p": params.delta_p,
                        "omega_c": drive.omega_c,
                        "omega_s": drive.omega_s,
                    },
                    quantity=name,
                    closed_form=cf,
                    oracle=ls,
                    relative_difference=diff,
                ))
        return lst_record

    def run(self):
        """Evaluate all draws without printing.
        @return CheckReport"""
        proginit.logger.debug("enter CheckSystem.run()")
        rng = np.random.default_rng(self.seed)
        report = CheckReport(self.draws)
        for draw in range(self.draws):
            params, drive, probe = self.draw(rng)
            try:
                lst_record = self.compare(draw, params, drive, probe)
            except (NearSingular, SingularSystem) as e:
                proginit.logger.info("draw {0} skipped: {1}".format(draw, e))
                report.skipped += 1
                continue
            if lst_record:
                for record in lst_record:
                    proginit.logger.warning("discrepancy {0}".format(record))
                report.records.extend(lst_record)
            else:
                report.passed += 1
        proginit.logger.debug("leave CheckSystem.run()")
        return report

    def start(self):
        """Run the comparison and print the results.
        @return Exit code, 0 without discrepancies"""
        print("--- NriVapor Checksystem ---\n")
        print("Draws: {0}  Seed: {1}  Tolerance: {2}  Complex probe: {3}".format(
            self.draws, self.seed, self.settings.crosscheck_tolerance, self.complex_probe
        ))
        report = self.run()
        print(newline)
        print("Passed : {0}".format(report.passed))
        print("Skipped: {0}".format(report.skipped))
        print("Failed : {0}".format(self.draws - report.passed - report.skipped))
        if report.records:
            print(newline)
            print("Discrepancies:")
            for record in report.records:
                print("\t{0}".format(record))
        return report.exitcode
