"""
File: conftest.py

Description: Shared fixtures, puts the package directory on the import path

@author Derek Garcia
"""

import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "dbdtc"))

from geometry.distance import DistanceProvider  # noqa: E402
from population.population import Population, synth_uniform  # noqa: E402


@pytest.fixture
def small_pop() -> Population:
    """
    :return: 6 units on a line
    """
    return Population(np.array([[0.0], [1.0], [2.0], [3.0], [5.0], [8.0]]))


@pytest.fixture
def small_geometry(small_pop) -> DistanceProvider:
    """
    :return: Cached distances of the 6 unit line
    """
    return DistanceProvider(small_pop)


@pytest.fixture
def uniform_pop() -> Population:
    """
    :return: 40 units with 2 uniform auxiliary variables
    """
    return synth_uniform(40, 2, seed=11)


@pytest.fixture
def uniform_geometry(uniform_pop) -> DistanceProvider:
    """
    :return: Cached distances of the uniform population
    """
    return DistanceProvider(uniform_pop)


@pytest.fixture
def csv_file(tmp_path):
    """
    Write a csv file from a header and rows

    :return: Function taking (header, rows) and returning the path
    """

    def _write(header, rows, name="pop.csv") -> str:
        path = tmp_path / name
        lines = [",".join(header)] + [",".join(str(v) for v in r) for r in rows]
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return str(path)

    return _write
