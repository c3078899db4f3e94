# -*- coding: utf-8 -*-
"""Setup script for NriVapor."""
__author__ = "Sven Sager"
__copyright__ = "Copyright (C) 2023 Sven Sager"
__license__ = "GPLv2"

from setuptools import find_namespace_packages, setup

from src.nrivapor import __version__

setup(
    name="nrivapor",
    version=__version__,

    packages=find_namespace_packages("src"),
    package_dir={'': 'src'},
    include_package_data=True,
    package_data={"nrivapor": ["data/*.cfg"]},

    python_requires=">=3.8",
    install_requires=[
        "numpy >= 1.20",
        "scipy >= 1.7",
    ],
    extras_require={
        "test": [
            "pytest >= 7.0",
            "sympy >= 1.9",
        ],
    },
    entry_points={
        'console_scripts': [
            'nrivapor = nrivapor.nrivapor:main',
        ],
    },

    license="GPLv2",
    author="Sven Sager",
    author_email="akira@narux.de",
    maintainer="Sven Sager",
    maintainer_email="akira@revpimodio.org",

    description="Negative refractive index maps of a standing-wave driven four-level vapor",
    long_description="Computes the steady-state electric and magnetic response of an N-type \n"
                     "four-level atomic vapor driven by two orthogonal standing-wave fields. \n"
                     "Permittivity, permeability and refractive index are evaluated on a 2-D \n"
                     "grid with local-field correction, written as CSV/JSON and analysed for \n"
                     "double-negative regions and the isotropy of Re{n} contours.",
    keywords=["negative refractive index", "left-handed media", "atomic coherence"],
    classifiers=[
        "Development Status :: 4 - Beta",
        "Environment :: Console",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: GNU General Public License v2 (GPLv2)",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Physics",
    ],
)
