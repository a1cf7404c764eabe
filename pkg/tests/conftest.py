"""Shared fixtures: the reference material and a few standard geometries."""

import math

import pytest

from cylshell.material import ShellGeometry, derive_material


@pytest.fixture(scope="session")
def mat():
    """Reference material E = 1, nu = 0.3 (mu = 5/13, Lambda = 3/2)."""
    return derive_material(1.0, 0.3)


@pytest.fixture(scope="session")
def geo_thick():
    return ShellGeometry(h=1e-2, L=math.pi)


@pytest.fixture(scope="session")
def geo_thin():
    return ShellGeometry(h=1e-4, L=math.pi)
