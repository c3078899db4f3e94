# -*- coding: utf-8 -*-
"""Steady state of the N-type four-level system at fixed drive.

The ground level |1> keeps the amplitude A1 = 1 (weak probe). The amplitudes
A2, A3, A4 follow from the equations of motion with all time derivatives set
to zero. Two independent routes are provided:

    steady_linear_solve  assembles the 3x3 system term by term from the
                         equations of motion and solves it. This is the
                         reference for everything downstream.
    steady_closed_form   evaluates the printed closed forms with the
                         denominator xi.

All functions take scalars or equally shaped numpy arrays in the drive and
probe values, so a whole grid row can be evaluated in one call.

"""
__author__ = "Sven Sager"
__copyright__ = "Copyright (C) 2023 Sven Sager"
__license__ = "GPLv2"

import math
from dataclasses import dataclass, fields, replace

import numpy as np

from . import proginit
from .errors import NearSingular, SingularSystem
from .helper import C_LIGHT, DEFAULT_SETTINGS, EPSILON_0, HBAR, MU_0

WEAK_PROBE_RATIO = 0.1
"""Warn if |omega_pE| exceeds this fraction of gamma3."""


@dataclass(frozen=True)
class SystemParams:
    """Rates, detunings, dipole moments and density of the vapor.

    Rates and detunings are angular frequencies in rad/s, d23 in C*m, mu12
    in C*m^2/s and the density in m^-3. gamma3/gamma4 are the decay rates
    of the excited levels, gamma12 the dephasing of the |1>-|2> coherence.

    """

    gamma3: float
    gamma4: float
    gamma12: float
    delta_p: float
    delta_c: float
    delta_s: float
    d23: float
    mu12: float
    density: float
    gamma_unit: float = 1e8

    def __post_init__(self):
        for field in fields(self):
            value = getattr(self, field.name)
            if not (isinstance(value, (int, float)) and math.isfinite(value)):
                raise ValueError("parameter {0} must be a finite number".format(field.name))
        for name in ("gamma3", "gamma4", "density", "gamma_unit", "d23", "mu12"):
            if getattr(self, name) <= 0:
                raise ValueError("parameter {0} must be > 0".format(name))
        if self.gamma12 < 0:
            raise ValueError("parameter gamma12 must be >= 0")

    def with_delta_p(self, delta_p):
        """Copy of these parameters with another probe detuning."""
        return replace(self, delta_p=float(delta_p))


@dataclass(frozen=True)
class LocalDrive:
    """Local Rabi frequencies of the coupling and signal standing waves."""

    omega_c: complex
    omega_s: complex

    def __post_init__(self):
        if not (np.all(np.isfinite(self.omega_c)) and np.all(np.isfinite(self.omega_s))):
            raise ValueError("parameter omega_c and omega_s must be finite")


@dataclass(frozen=True)
class ProbeDrive:
    """Electric and magnetic Rabi frequencies of the weak probe."""

    omega_pE: complex
    omega_pB: complex


@dataclass(frozen=True)
class SteadyAmplitudes:
    """Probability amplitudes of |2>, |3>, |4> with A1 = 1."""

    a2: complex
    a3: complex
    a4: complex


@dataclass(frozen=True)
class Polarizabilities:
    """Microscopic electric and magnetic polarizability volumes in m^3."""

    gamma_e: complex
    gamma_m: complex


def probe_from_electric(params, omega_pE):
    """Probe with the magnetic part tied to the electric one by E_p/B_p = c.

    @param params SystemParams
    @param omega_pE Electric probe Rabi frequency in rad/s
    @return ProbeDrive

    """
    if np.any(np.abs(omega_pE) > WEAK_PROBE_RATIO * params.gamma3):
        proginit.logger.warning(
            "probe rabi frequency {0} rad/s is not weak against gamma3 {1} rad/s"
            "".format(np.max(np.abs(omega_pE)), params.gamma3)
        )
    return ProbeDrive(omega_pE, omega_pE * params.mu12 / (C_LIGHT * params.d23))


def _factors(params):
    """Complex damping factors of the |2>, |3> and |4> amplitudes.
    @return Tuple (a, b, d)"""
    a = params.gamma12 / 2 + 1j * (params.delta_p - params.delta_c)
    b = params.gamma3 / 2 + 1j * params.delta_p
    d = params.gamma4 / 2 + 1j * (params.delta_s + params.delta_p - params.delta_c)
    return a, b, d


def xi(params, drive):
    """Common denominator of the closed-form amplitudes.

    @param params SystemParams
    @param drive LocalDrive
    @return xi in rad^3/s^3

    """
    a, b, d = _factors(params)
    omega_c = np.asarray(drive.omega_c, dtype=complex)
    omega_s = np.asarray(drive.omega_s, dtype=complex)
    rc = omega_c * np.conj(omega_c) / 4
    rs = omega_s * np.conj(omega_s) / 4
    value = -(rc + a * b) * d - rs * b
    return value[()] if np.ndim(value) == 0 else value


def xi_floor(params, settings=DEFAULT_SETTINGS):
    """Smallest accepted |xi| in rad^3/s^3."""
    return settings.xi_floor * params.gamma_unit ** 3


def _closed_form(params, drive, probe):
    """Closed-form amplitudes without any checks.
    @return Tuple (a2, a3, a4, xi)"""
    a, b, d = _factors(params)
    omega_c = np.asarray(drive.omega_c, dtype=complex)
    omega_s = np.asarray(drive.omega_s, dtype=complex)
    pe = np.asarray(probe.omega_pE, dtype=complex)
    pb = np.asarray(probe.omega_pB, dtype=complex)
    x = xi(params, drive)

    a2 = d / x * (np.conj(omega_c) * pe / 4 - 0.5j * b * pb)
    a3 = -0.5j / x * d * (a * pe + 0.5j * omega_c * pb) \
        - 0.125j / x * omega_s * np.conj(omega_s) * pe
    a4 = -0.5j / x * (-0.25 * pe * np.conj(omega_c) + 0.5j * b * pb) * omega_s
    return a2, a3, a4, x


def steady_closed_form(params, drive, probe, settings=DEFAULT_SETTINGS):
    """Amplitudes from the printed closed forms.

    @param params SystemParams
    @param drive LocalDrive
    @param probe ProbeDrive
    @param settings SolverSettings with the xi floor
    @return SteadyAmplitudes

    """
    a2, a3, a4, x = _closed_form(params, drive, probe)
    floor = xi_floor(params, settings)
    small = np.abs(x) < floor
    if np.any(small):
        raise NearSingular(
            "|xi| below floor {0}".format(floor),
            xi=complex(np.ravel(x)[np.argmax(np.ravel(small))]),
            delta_p=params.delta_p,
        )
    return SteadyAmplitudes(_item(a2), _item(a3), _item(a4))


def _linear_solve(params, drive, probe, settings=DEFAULT_SETTINGS):
    """Solve the stationary equations of motion for a batch of points.

    Row order is dA2/dt, dA3/dt, dA4/dt with A1 = 1 moved to the right hand
    side. The probe term of the A3 row is the electric Rabi frequency.

    @return Tuple (a2, a3, a4, singular) where singular marks points with a
            condition estimate above the bound; their amplitudes are NaN

    """
    a, b, d = _factors(params)
    omega_c = np.asarray(drive.omega_c, dtype=complex)
    omega_s = np.asarray(drive.omega_s, dtype=complex)
    pe = np.asarray(probe.omega_pE, dtype=complex)
    pb = np.asarray(probe.omega_pB, dtype=complex)
    shape = np.broadcast(omega_c, omega_s, pe, pb).shape
    omega_c = np.broadcast_to(omega_c, shape)
    omega_s = np.broadcast_to(omega_s, shape)

    mat = np.zeros(shape + (3, 3), dtype=complex)
    mat[..., 0, 0] = -a
    mat[..., 0, 1] = 0.5j * np.conj(omega_c)
    mat[..., 0, 2] = 0.5j * np.conj(omega_s)
    mat[..., 1, 0] = 0.5j * omega_c
    mat[..., 1, 1] = -b
    mat[..., 2, 0] = 0.5j * omega_s
    mat[..., 2, 2] = -d

    rhs = np.zeros(shape + (3, 1), dtype=complex)
    rhs[..., 0, 0] = -0.5j * np.conj(pb)
    rhs[..., 1, 0] = -0.5j * pe

    with np.errstate(divide="ignore", invalid="ignore"):
        cond = np.linalg.cond(mat)
    singular = np.asarray(~np.isfinite(cond) | (cond > settings.condition_bound))
    if np.any(singular):
        mat = np.where(singular[..., None, None], np.eye(3), mat)

    sol = np.linalg.solve(mat, rhs)[..., 0]
    sol[singular] = np.nan
    return sol[..., 0], sol[..., 1], sol[..., 2], singular


def steady_linear_solve(params, drive, probe, settings=DEFAULT_SETTINGS):
    """Amplitudes from the stationary equations of motion.

    @param params SystemParams
    @param drive LocalDrive
    @param probe ProbeDrive
    @param settings SolverSettings with the condition bound
    @return SteadyAmplitudes

    """
    a2, a3, a4, singular = _linear_solve(params, drive, probe, settings)
    if np.any(singular):
        raise SingularSystem(
            "condition estimate above {0}".format(settings.condition_bound),
            delta_p=params.delta_p,
        )
    return SteadyAmplitudes(_item(a2), _item(a3), _item(a4))


def reference_probe(params, settings=DEFAULT_SETTINGS, probe_factor=1.0):
    """Weak probe used to evaluate the polarizabilities.
    @param probe_factor Extra scaling of the configured probe strength"""
    return probe_from_electric(
        params, settings.probe_scale * params.gamma_unit * probe_factor
    )


def polarizability_arrays(params, drive, settings=DEFAULT_SETTINGS, probe_factor=1.0):
    """Polarizabilities for a batch of points without raising.

    @return Tuple (gamma_e, gamma_m, near_singular, singular); values of
            flagged points are NaN

    """
    probe = reference_probe(params, settings, probe_factor)
    a2, a3, a4, singular = _linear_solve(params, drive, probe, settings)
    near_singular = np.abs(xi(params, drive)) < xi_floor(params, settings)
    near_singular = np.broadcast_to(near_singular, np.shape(a2))
    singular = singular & ~near_singular

    gamma_e = 2 * params.d23 ** 2 * a3 / (HBAR * EPSILON_0 * probe.omega_pE)
    gamma_m = 2 * MU_0 * params.mu12 ** 2 * a2 / (HBAR * probe.omega_pB)
    bad = near_singular | singular
    if np.any(bad):
        gamma_e = np.where(bad, np.nan, gamma_e)
        gamma_m = np.where(bad, np.nan, gamma_m)
    return gamma_e, gamma_m, near_singular, singular


def polarizabilities(params, drive, settings=DEFAULT_SETTINGS, probe_factor=1.0):
    """Electric and magnetic polarizability at one drive.

    The amplitudes come from the linear solve with a weak reference probe;
    both quantities are ratios and do not depend on the probe strength.

    @param params SystemParams
    @param drive LocalDrive
    @param settings SolverSettings
    @param probe_factor Extra scaling of the reference probe
    @return Polarizabilities

    """
    gamma_e, gamma_m, near_singular, singular = polarizability_arrays(
        params, drive, settings, probe_factor
    )
    if np.any(near_singular):
        raise NearSingular(
            "|xi| below floor {0}".format(xi_floor(params, settings)),
            delta_p=params.delta_p,
        )
    if np.any(singular):
        raise SingularSystem(
            "condition estimate above {0}".format(settings.condition_bound),
            delta_p=params.delta_p,
        )
    return Polarizabilities(_item(gamma_e), _item(gamma_m))


def _item(value):
    """Plain complex for 0-d results, the array otherwise."""
    value = np.asarray(value)
    return complex(value) if value.ndim == 0 else value
