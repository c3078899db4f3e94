# -*- coding: utf-8 -*-
"""Macroscopic permittivity, permeability and refractive index.

The local-field correction maps the microscopic polarizabilities to the
relative constitutive parameters. The refractive index is the square root
of eps_r * mu_r with the branch fixed by the half sum of the arguments.

"""
__author__ = "Sven Sager"
__copyright__ = "Copyright (C) 2023 Sven Sager"
__license__ = "GPLv2"

import enum
from dataclasses import dataclass

import numpy as np

from .errors import CMPole, NearSingular, SingularSystem
from .helper import BRANCH_LEFTHANDED, BRANCH_PRINCIPAL, DEFAULT_SETTINGS
from .quantumsteady import Polarizabilities, polarizability_arrays, xi_floor

BRANCH_TOLERANCE = 1e-9
"""Distance of an argument to the branch cut which sets BranchAmbiguous."""


class SampleFlag(enum.IntFlag):
    """State and error bits of a medium sample."""

    NONE = 0
    DOUBLE_NEGATIVE = 1
    NEAR_CM_POLE = 2
    BRANCH_AMBIGUOUS = 4
    CM_POLE = 8
    NEAR_SINGULAR = 16
    SINGULAR_SYSTEM = 32


ERROR_FLAGS = SampleFlag.CM_POLE | SampleFlag.NEAR_SINGULAR | SampleFlag.SINGULAR_SYSTEM

FLAG_NAMES = (
    (SampleFlag.DOUBLE_NEGATIVE, "DoubleNegative"),
    (SampleFlag.NEAR_CM_POLE, "NearCMPole"),
    (SampleFlag.BRANCH_AMBIGUOUS, "BranchAmbiguous"),
    (SampleFlag.CM_POLE, "CMPole"),
    (SampleFlag.NEAR_SINGULAR, "NearSingular"),
    (SampleFlag.SINGULAR_SYSTEM, "SingularSystem"),
)


def flag_names(flags):
    """Names of all set bits.
    @param flags SampleFlag or int
    @return List of names in fixed order"""
    flags = int(flags)
    return [name for bit, name in FLAG_NAMES if flags & bit]


@dataclass(frozen=True)
class MediumSample:
    """Relative permittivity, permeability and refractive index at a point."""

    eps_r: complex
    mu_r: complex
    n: complex
    flags: SampleFlag = SampleFlag.NONE

    @property
    def double_negative(self):
        return bool(self.flags & SampleFlag.DOUBLE_NEGATIVE)


def _cm_ratio(ngamma):
    return (1 + 2 * ngamma / 3) / (1 - ngamma / 3)


def clausius_mossotti(density, gamma, floor=DEFAULT_SETTINGS.cm_floor):
    """Relative constitutive parameter with local-field correction.

    The same relation serves eps_r with gamma_e and mu_r with gamma_m.

    @param density Atomic concentration in m^-3
    @param gamma Polarizability volume in m^3
    @param floor Smallest accepted |1 - N*gamma/3|
    @return (1 + 2N*gamma/3) / (1 - N*gamma/3)

    """
    ngamma = density * np.asarray(gamma, dtype=complex)
    denominator = np.abs(1 - ngamma / 3)
    if np.any(denominator < floor):
        raise CMPole(
            "|1 - N*gamma/3| = {0} below floor {1}".format(np.min(denominator), floor),
            ngamma=complex(np.ravel(ngamma)[np.argmin(np.ravel(denominator))]),
        )
    value = _cm_ratio(ngamma)
    return complex(value) if value.ndim == 0 else value


def _arguments(z, rule):
    """Arguments on the interval of the branch rule and distance to its cut."""
    theta = np.angle(z)
    if rule == BRANCH_PRINCIPAL:
        # (-pi, pi], a negative zero imaginary part counts as +pi
        theta = np.where(theta <= -np.pi, theta + 2 * np.pi, theta)
        distance = np.pi - np.abs(theta)
    elif rule == BRANCH_LEFTHANDED:
        # [-pi/2, 3pi/2), the third quadrant continues the second one
        theta = np.where(theta < -np.pi / 2, theta + 2 * np.pi, theta)
        distance = np.minimum(theta + np.pi / 2, 1.5 * np.pi - theta)
    else:
        raise ValueError("unknown branch rule '{0}'".format(rule))
    return theta, distance


def branch_index(eps_r, mu_r, rule=BRANCH_LEFTHANDED):
    """Refractive index and branch ambiguity for scalars or arrays.

    @param eps_r Relative permittivity
    @param mu_r Relative permeability
    @param rule Branch rule, see helper.BRANCH_RULES
    @return Tuple (n, ambiguous)

    """
    eps_r = np.asarray(eps_r, dtype=complex)
    mu_r = np.asarray(mu_r, dtype=complex)
    theta_e, dist_e = _arguments(eps_r, rule)
    theta_m, dist_m = _arguments(mu_r, rule)
    n = np.sqrt(np.abs(eps_r) * np.abs(mu_r)) * np.exp(0.5j * (theta_e + theta_m))
    ambiguous = (dist_e < BRANCH_TOLERANCE) | (dist_m < BRANCH_TOLERANCE)
    return n, ambiguous


def refractive_index(eps_r, mu_r, rule=BRANCH_LEFTHANDED):
    """Complex refractive index of a medium.

    @param eps_r Relative permittivity
    @param mu_r Relative permeability
    @param rule Branch rule, see helper.BRANCH_RULES
    @return n with n**2 == eps_r * mu_r

    """
    n, ambiguous = branch_index(eps_r, mu_r, rule)
    return complex(n) if n.ndim == 0 else n


def medium_arrays(density, gamma_e, gamma_m, settings=DEFAULT_SETTINGS):
    """Constitutive parameters and flags for a batch of polarizabilities.

    Points where a Clausius-Mossotti denominator falls below the floor get
    NaN values and the CM_POLE flag; nothing is raised.

    @return Tuple (eps_r, mu_r, n, flags) with flags as int array

    """
    ne = density * np.asarray(gamma_e, dtype=complex)
    nm = density * np.asarray(gamma_m, dtype=complex)
    flags = np.zeros(np.broadcast(ne, nm).shape, dtype=np.int64)

    if settings.local_field:
        with np.errstate(divide="ignore", invalid="ignore"):
            den_e = np.abs(1 - ne / 3)
            den_m = np.abs(1 - nm / 3)
            eps_r = _cm_ratio(ne)
            mu_r = _cm_ratio(nm)
        den = np.minimum(den_e, den_m)
        pole = den < settings.cm_floor
        flags = np.where(pole, flags | SampleFlag.CM_POLE, flags)
        flags = np.where(
            ~pole & (den < settings.near_pole), flags | SampleFlag.NEAR_CM_POLE, flags
        )
        eps_r = np.where(pole, np.nan, eps_r)
        mu_r = np.where(pole, np.nan, mu_r)
    else:
        eps_r = 1 + ne
        mu_r = 1 + nm

    n, ambiguous = branch_index(eps_r, mu_r, settings.branch_rule)
    valid = np.isfinite(eps_r) & np.isfinite(mu_r)
    flags = np.where(valid & ambiguous, flags | SampleFlag.BRANCH_AMBIGUOUS, flags)
    double_negative = valid & (eps_r.real < 0) & (mu_r.real < 0)
    flags = np.where(double_negative, flags | SampleFlag.DOUBLE_NEGATIVE, flags)
    return eps_r, mu_r, n, flags


def medium_from_polarizabilities(density, pol, settings=DEFAULT_SETTINGS, **where):
    """MediumSample from known polarizabilities.

    @param density Atomic concentration in m^-3
    @param pol Polarizabilities
    @param settings SolverSettings
    @param where Location attached to a raised CMPole
    @return MediumSample

    """
    eps_r, mu_r, n, flags = medium_arrays(density, pol.gamma_e, pol.gamma_m, settings)
    if int(flags) & SampleFlag.CM_POLE:
        ne = density * pol.gamma_e
        nm = density * pol.gamma_m
        raise CMPole(
            "|1 - N*gamma/3| below floor {0}".format(settings.cm_floor),
            ngamma_e=complex(ne), ngamma_m=complex(nm), **where
        )
    return MediumSample(complex(eps_r), complex(mu_r), complex(n), SampleFlag(int(flags)))


def medium_sample(params, drive, settings=DEFAULT_SETTINGS, **where):
    """Permittivity, permeability and refractive index at one drive.

    @param params SystemParams
    @param drive LocalDrive
    @param settings SolverSettings
    @param where Location like x=..., y=... attached to raised errors
    @return MediumSample

    """
    return sample_with_polarizabilities(params, drive, settings, **where)[0]


def sample_with_polarizabilities(params, drive, settings=DEFAULT_SETTINGS, **where):
    """Like medium_sample, but returns the polarizabilities as well.
    @return Tuple (MediumSample, Polarizabilities)"""
    gamma_e, gamma_m, near_singular, singular = polarizability_arrays(params, drive, settings)
    where.setdefault("delta_p", params.delta_p)
    if np.any(near_singular):
        raise NearSingular(
            "|xi| below floor {0}".format(xi_floor(params, settings)), **where
        )
    if np.any(singular):
        raise SingularSystem(
            "condition estimate above {0}".format(settings.condition_bound), **where
        )
    pol = Polarizabilities(complex(gamma_e), complex(gamma_m))
    return medium_from_polarizabilities(params.density, pol, settings, **where), pol
