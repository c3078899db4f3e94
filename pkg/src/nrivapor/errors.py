# -*- coding: utf-8 -*-
"""
Exceptions of the NriVapor system.

Exit codes of the command line:
    0: Successful
    2: Configuration error
    3: Computation error
    4: No contour encloses the reference point
    5: Closed forms and linear solve disagree
"""
__author__ = "Sven Sager"
__copyright__ = "Copyright (C) 2023 Sven Sager"
__license__ = "GPLv2"

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_COMPUTATION = 3
EXIT_NO_CONTOUR = 4
EXIT_DISCREPANCY = 5


class NriError(Exception):
    """Base class of all NriVapor errors."""

    exitcode = EXIT_COMPUTATION

    def __init__(self, message, **context):
        """Init NriError class.

        @param message Human readable reason
        @param context Location data like x, y or delta_p

        """
        super().__init__(message)
        self.context = dict(context)

    @property
    def name(self):
        """Name of the error class as written to the output records."""
        return type(self).__name__


class ConfigError(NriError, ValueError):
    """Invalid or incomplete run configuration."""

    exitcode = EXIT_CONFIG

    def __init__(self, key, reason):
        """Init ConfigError class.

        @param key Key path like SYSTEM.density
        @param reason What is wrong with the key

        """
        super().__init__("{0}: {1}".format(key, reason), key=key)
        self.key = key
        self.reason = reason


class ComputationError(NriError, ArithmeticError):
    """A numerical evaluation could not produce a finite result."""


class NearSingular(ComputationError):
    """|xi| dropped below the configured floor."""


class SingularSystem(ComputationError):
    """The steady-state coefficient matrix is numerically singular."""


class CMPole(ComputationError):
    """Denominator of the Clausius-Mossotti relation is below the floor."""


class DegenerateFit(ComputationError):
    """Too few or collinear points for a circle fit."""


class NoEnclosingContour(NriError):
    """No closed contour encloses the reference point."""

    exitcode = EXIT_NO_CONTOUR
