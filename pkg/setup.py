#!/usr/bin/env python3

import setuptools

import cq_polar.version

with open("README.md", "r") as fd:
    long_description = fd.read()

setuptools.setup(
    name="cq_polar",
    version=cq_polar.version.VERSION,
    author="The CQ_POLAR Developers",
    description="Polar codes for classical-quantum channels, multiple access and interference channels.",
    long_description=long_description,
    long_description_content_type="text/markdown",
    url="https://github.com/cq-polar/cq_polar",
    project_urls={
        "Bug Tracker"   : cq_polar.version.BUG_REPORTS,
        "Source Code"   : "https://github.com/cq-polar/cq_polar",
    },
    license="GNU General Public License v3",
    packages=["cq_polar"],
    python_requires=">=3.8, <4",
    install_requires=[
        "numpy>=1.22",
        "scipy>=1.10",
    ],
    extras_require={
        "test": ["pytest>=7", "hypothesis>=6", "coverage>=6"],
    },
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: GNU General Public License v3 or later (GPLv3+)",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Topic :: Scientific/Engineering :: Physics",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Topic :: Utilities"
    ],
    entry_points={
        "console_scripts": [
            "cqp_polarize = cq_polar.cqp_polarize:main",
            "cqp_mac = cq_polar.cqp_mac:main",
            "cqp_decode = cq_polar.cqp_decode:main",
            "cqp_hk = cq_polar.cqp_hk:main",
        ],
    },
)
