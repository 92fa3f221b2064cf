from __future__ import annotations

import pytest

from voltclust.graph import Digraph
from voltclust.group import standard_point_group
from voltclust.voltage import VoltageGraph

FIG1_EDGES = [(i, i + 1) for i in range(1, 8)] + [(8, 1), (1, 8)]


@pytest.fixture(scope="session")
def c6():
    return standard_point_group("cyclic", n=6)


@pytest.fixture(scope="session")
def d6():
    return standard_point_group("dihedral", n=6, v=(1, 0))


@pytest.fixture(scope="session")
def sign_group():
    return standard_point_group("sign")


@pytest.fixture(scope="session")
def fig1():
    return Digraph(8, FIG1_EDGES)


@pytest.fixture(scope="session")
def example1_vg(fig1, c6):
    rot = c6.generator_indices[0]
    rho = {(i, i + 1): rot for i in range(1, 8)}
    rho[(8, 1)] = c6.inv(rot)
    rho[(1, 8)] = rot
    return VoltageGraph(fig1, c6, rho)


@pytest.fixture(scope="session")
def example2_vg(fig1, d6):
    rot, ref = d6.generator_indices
    rho = {(i, i + 1): rot for i in range(1, 8)}
    rho[(8, 1)] = d6.inv(rot)
    rho[(1, 8)] = d6.mul(ref, rot)
    return VoltageGraph(fig1, d6, rho)
