#!/usr/bin/env python

from codecs import open
from os import path

from setuptools import find_packages, setup

from fairselect import __version__

tests_require = [
    "mock==4.0.2",
    # Linting
    "isort[pyproject]==4.3.21",
    "flake8==3.7.9",
    "flake8-blind-except==0.1.1",
    "flake8-debugger==3.1.0",
]


install_requires = [
    "Django>=3.2,<5",
    "Unidecode>=0.04.14,<2.0",
    "numpy>=1.20",
    "scipy>=1.7",
    "pandas>=1.5",
]

documentation_extras = [
    "sphinxcontrib-spelling>=2.3.0",
    "Sphinx>=1.5.2",
    "sphinx-autobuild>=0.6.0",
    "karma_sphinx_theme>=0.0.6",
]

here = path.abspath(path.dirname(__file__))

with open(path.join(here, "README.rst"), encoding="utf-8") as f:
    long_description = f.read()

setup(
    name="fairselect",
    version=__version__,
    description="Statistically fair selection from a candidate pool, with an experiment harness",
    long_description=long_description,
    license="MIT",
    packages=find_packages(include=["fairselect", "fairselect.*"]),
    install_requires=install_requires,
    extras_require={
        "docs": documentation_extras,
        "test": tests_require,
    },
    entry_points={"console_scripts": ["fairselect = fairselect.cli:main"]},
    include_package_data=True,
    keywords=["fairness", "statistical parity", "selection", "django"],
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Framework :: Django",
        "Framework :: Django :: 3.2",
        "Framework :: Django :: 4.2",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
)
