import numpy as np
import pytest

from unirigid.certificate import RigidityCertificate
from unirigid.gale import (
    configuration_from_gale,
    construct_universally_rigid_framework,
    gale_from_representation,
    stress_from_gale,
)
from unirigid.graph import generate

SQ2 = np.sqrt(2.0)

# Hand orthogonal representation of C4: x1.x3 = 0, x2.x4 = 0.
C4_X = np.array([[1.0, 0.0], [1 / SQ2, 1 / SQ2], [0.0, 1.0], [1 / SQ2, -1 / SQ2]])
# Solved by hand from X^T xi = 0 (the unnormalised rows give (-3, 2, -1, 1)).
C4_XI = np.array([-3.0, 2 * SQ2, -1.0, SQ2])


@pytest.fixture(scope="session")
def k33():
    return generate("complete_bipartite", [3, 3])


@pytest.fixture(scope="session")
def k33_cert(k33):
    return construct_universally_rigid_framework(k33, 2, seed=7)


@pytest.fixture
def c4_cert():
    g = generate("cycle", [4])
    gd = gale_from_representation(C4_X, C4_XI)
    conf = configuration_from_gale(gd)
    return RigidityCertificate(
        g=g, r=1, seed=0, X=C4_X, xi=gd.xi, Z=gd.Z, P=conf.P, Omega=stress_from_gale(gd)
    )
