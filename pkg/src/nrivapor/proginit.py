# -*- coding: utf-8 -*-
"""Main functions of our program."""
__author__ = "Sven Sager"
__copyright__ = "Copyright (C) 2023 Sven Sager"
__license__ = "GPLv2"

import logging
import os
import sys
from argparse import ArgumentParser

from . import __version__

CONFIG_ENV = "NRIVAPOR_CONFIG"
"""Environment variable with the default configuration file."""

conffile = None
logger = logging.getLogger()
pargs = None
_handlers = []


def cleanup():
    """Clean up program."""
    for lhandler in _handlers:
        logger.removeHandler(lhandler)
        lhandler.close()
    _handlers.clear()


def _parent_parser(with_workers=False):
    """Shared options of all sub commands.

    @param with_workers Add --workers for grid evaluating commands
    @return ArgumentParser without help

    """
    parent = ArgumentParser(add_help=False)
    parent.add_argument(
        "-c", "--config", dest="conffile",
        help="Configuration file (default: ${0} or bundled paper-fig2.cfg)"
             "".format(CONFIG_ENV)
    )
    parent.add_argument(
        "-o", "--out", dest="outdir",
        help="Output directory, overrides [OUTPUT] directory"
    )
    if with_workers:
        parent.add_argument(
            "--workers", dest="workers", type=int,
            help="Number of worker threads for the grid evaluation"
        )
    return parent


def build_parser():
    """Create the argument parser with all sub commands.
    @return ArgumentParser"""
    parser = ArgumentParser(
        prog="nrivapor",
        description="Negative refractive index of a standing-wave driven "
                    "four-level atomic vapor"
    )
    parser.add_argument(
        "--version",
        action="version",
        version="%(prog)s {0}".format(__version__)
    )
    parser.add_argument(
        "-f", "--logfile", dest="logfile",
        help="Save log entries to this file"
    )
    parser.add_argument(
        "-v", "--verbose", action="count", dest="verbose",
        help="Switch on verbose logging: info -v debug -vv"
    )

    base = _parent_parser()
    grid = _parent_parser(with_workers=True)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser(
        "point", parents=[base],
        help="Response at one point as JSON on stdout"
    )
    p.add_argument("--x", dest="x", type=float, required=True, help="x in lambda")
    p.add_argument("--y", dest="y", type=float, required=True, help="y in lambda")
    p.add_argument("--delta-p", dest="delta_p", type=float, help="Probe detuning in gamma")

    p = sub.add_parser("map", parents=[grid], help="One map as CSV with JSON sidecar")
    p.add_argument("--delta-p", dest="delta_p", type=float, help="Probe detuning in gamma")

    sub.add_parser("sweep", parents=[grid], help="One map per [SWEEP] detuning")

    p = sub.add_parser(
        "contours", parents=[grid],
        help="Re{n} contours, innermost circle fit and region metrics"
    )
    p.add_argument("--delta-p", dest="delta_p", type=float, help="Probe detuning in gamma")
    p.add_argument("--level", dest="level", type=float, help="Contour level of Re{n}")

    p = sub.add_parser("profile", parents=[grid], help="Cut through a map along one axis")
    p.add_argument("--delta-p", dest="delta_p", type=float, help="Probe detuning in gamma")
    p.add_argument("--axis", dest="axis", choices=("x", "y"), default="x")
    p.add_argument("--at", dest="at", type=float, help="Fixed coordinate of the cut in lambda")

    p = sub.add_parser(
        "check", parents=[base],
        help="Randomized cross check of closed forms against the linear solve"
    )
    p.add_argument("--draws", dest="draws", type=int, default=1000)
    p.add_argument("--seed", dest="seed", type=int, default=1)
    p.add_argument(
        "--complex-probe", dest="complex_probe", action="store_true", default=False,
        help="Draw probes with a random phase, closed forms assume a real probe"
    )

    return parser


def configure(argv=None):
    """Initialize general program functions.

    @param argv Argument list, sys.argv[1:] if None
    @return Parsed arguments

    """
    global pargs
    pargs = build_parser().parse_args(argv)

    # Pfade absolut umschreiben
    global conffile
    conffile = pargs.conffile
    if conffile is None:
        conffile = os.environ.get(CONFIG_ENV) or None
    if conffile is not None:
        conffile = os.path.abspath(conffile)

    # Alte Handler entfernen
    cleanup()

    # Neue Handler bauen, stdout gehoert den Datensaetzen
    logformat = logging.Formatter(
        "{asctime} [{levelname:8}] {message}",
        datefmt="%Y-%m-%d %H:%M:%S", style="{"
    )
    lhandler = logging.StreamHandler(sys.stderr)
    lhandler.setFormatter(logformat)
    logger.addHandler(lhandler)
    _handlers.append(lhandler)

    if pargs.logfile is not None:
        lhandler = logging.FileHandler(filename=pargs.logfile)
        lhandler.setFormatter(logformat)
        logger.addHandler(lhandler)
        _handlers.append(lhandler)

    # Loglevel auswerten
    if pargs.verbose is None:
        loglevel = logging.WARNING
    elif pargs.verbose == 1:
        loglevel = logging.INFO
    else:
        loglevel = logging.DEBUG
    logger.setLevel(loglevel)

    return pargs
