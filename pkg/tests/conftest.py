import json

import numpy as np
import pytest

from logbm import Ball, Box, Cylinder, Dilate, Polytope, geodesic_grid
from logbm.cli import _random_polytope


@pytest.fixture(scope="session")
def ball():
    return Ball(1.0)


@pytest.fixture(scope="session")
def cube():
    return Box((1.0, 1.0, 1.0))


@pytest.fixture(scope="session")
def box242():
    return Box((1.0, 1.0, 2.0))


@pytest.fixture(scope="session")
def cyl():
    return Cylinder(1.0, 1.0)


@pytest.fixture(scope="session")
def body_zoo(ball, cube, box242, cyl):
    rng = np.random.default_rng(7)
    return [
        ball, cube, box242, cyl,
        Ball(0.35), Box((0.5, 1.5, 0.75)), Cylinder(2.0, 0.5),
        Dilate(1.7, Cylinder(0.8, 1.2)),
        Polytope(np.vstack([np.eye(3), -np.eye(3)]) * 1.5),
        _random_polytope(rng, "symmetric-polytope"),
        _random_polytope(rng, "polytope"),
    ]


@pytest.fixture(scope="session")
def grid2():
    return geodesic_grid(2)


@pytest.fixture(scope="session")
def grid3():
    return geodesic_grid(3)


@pytest.fixture(scope="session")
def grid4():
    return geodesic_grid(4)


@pytest.fixture()
def body_file(tmp_path):
    """Write a body description to a JSON file and return its path."""
    def write(desc, name="body.json"):
        path = tmp_path / name
        path.write_text(json.dumps(desc))
        return str(path)

    return write


def random_directions(rng, n):
    u = rng.normal(size=(n, 3))
    return u / np.linalg.norm(u, axis=1, keepdims=True)
