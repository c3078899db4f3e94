# -*- coding: utf-8 -*-
"""Package: NriVapor."""
__author__ = "Sven Sager"
__copyright__ = "Copyright (C) 2023 Sven Sager"
__license__ = "GPLv2"
__package__ = "nrivapor"
__version__ = "0.1.0"
