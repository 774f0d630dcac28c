# read the contents of your README file
from pathlib import Path

from setuptools import find_packages, setup

this_directory = Path(__file__).parent
long_description = (this_directory / "README.rst").read_text()

setup(
    name="boxlab",
    packages=find_packages(include=["boxlab", "boxlab.*"]),
    version="0.1.0",
    description="Desk scale experiments with box spaces of residually finite groups.",
    readme="README.rst",
    long_description=long_description,
    long_description_content_type="text/x-rst",
    license="MIT",
    python_requires=">=3.9",
    install_requires=["numpy", "scipy", "networkx", "sympy"],
    extras_require={
        "test": ["pytest"],
        "docs": [
            "sphinx",
            "sphinx-rtd-theme",
            "sphinx-autodoc-typehints",
        ],
    },
    entry_points={"console_scripts": ["boxlab = boxlab.cli:main"]},
    keywords=["box_spaces", "cayley_graphs", "coarse_geometry", "residually_finite_groups"],
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
    ],
)
