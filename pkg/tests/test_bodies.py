import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from logbm import (
    Ball,
    Box,
    Cylinder,
    Dilate,
    DegenerateBody,
    InvalidParameter,
    Polytope,
    RevolutionBody,
    TrigPolynomial,
    outer_parallel_support,
    rho_extremes,
    support,
    support_witness,
)
from conftest import random_directions

coords = st.floats(-1.0, 1.0, allow_nan=False, allow_infinity=False)
directions = st.tuples(coords, coords, coords).filter(
    lambda u: math.hypot(*u) > 1e-3)
scales = st.floats(0.01, 100.0, allow_nan=False)


def zoo():
    return [
        Ball(1.3),
        Box((0.5, 1.0, 2.0)),
        Cylinder(0.8, 1.4),
        Polytope(np.vstack([np.eye(3), -np.eye(3), [[0.5, 0.5, 0.5]]])),
        Dilate(2.5, Box((1.0, 0.25, 0.75))),
    ]


@settings(deadline=None, max_examples=60)
@given(u=directions, lam=scales)
def test_support_positive_homogeneity(u, lam):
    for body in zoo():
        h1 = support(body, np.array(u) * lam)
        h0 = support(body, np.array(u))
        assert h1 == pytest.approx(lam * h0, rel=1e-12, abs=1e-300)


@settings(deadline=None, max_examples=60)
@given(u=directions, v=directions)
def test_support_subadditivity(u, v):
    for body in zoo():
        a = support(body, np.array(u)) + support(body, np.array(v))
        s = support(body, np.array(u) + np.array(v))
        assert s <= a + 1e-9 * max(abs(a), 1.0)


@settings(deadline=None, max_examples=60)
@given(u=directions)
def test_witness_attains_support(u):
    u = np.array(u)
    for body in zoo():
        w = support_witness(body, u)
        h = support(body, u)
        assert float(w @ u) == pytest.approx(h, rel=1e-9, abs=1e-9)


def test_witness_lies_inside(body_zoo):
    rng = np.random.default_rng(3)
    dirs = random_directions(rng, 200)
    probes = random_directions(rng, 64)
    for body in body_zoo:
        pts = body.support_witness(dirs)
        h = body.support(probes)
        # every boundary point must satisfy all supporting halfspaces
        assert np.max(pts @ probes.T - h[None, :]) <= 1e-9 * max(np.max(np.abs(h)), 1.0)


def test_vectorized_support_shapes(ball):
    dirs = np.array([[1.0, 0.0, 0.0], [0.0, 2.0, 0.0]])
    out = ball.support(dirs)
    assert out.shape == (2,)
    assert ball.support(np.array([3.0, 0.0, 0.0])) == pytest.approx(3.0)


def test_closed_forms_on_axes(cube, box242, cyl):
    e = np.eye(3)
    assert np.allclose(cube.support(e), [1.0, 1.0, 1.0])
    assert np.allclose(box242.support(e), [1.0, 1.0, 2.0])
    assert np.allclose(cyl.support(e), [1.0, 1.0, 1.0])  # axis z
    u = np.array([1.0, 0.0, 1.0])
    assert cyl.support(u) == pytest.approx(2.0)  # r*|u_xy| + h*|u_z|


def test_polytope_argmax_breaks_ties_low_index():
    verts = np.array([[1.0, 0.0, 0.0], [1.0, 1.0, 0.0], [1.0, -1.0, 0.0],
                      [-1.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.0, 0.0, -1.0]])
    body = Polytope(verts)
    idx = body.support_argmax(np.array([[1.0, 0.0, 0.0]]))
    assert idx[0] == 0  # vertices 0, 1, 2 tie on x; lowest index wins


def test_dilate_flattens_and_scales():
    inner = Ball(2.0)
    d = Dilate(3.0, Dilate(0.5, inner))
    assert d.factor == pytest.approx(1.5)
    assert d.inner is inner
    assert d.support(np.array([0.0, 1.0, 0.0])) == pytest.approx(3.0)
    with pytest.raises(InvalidParameter):
        Dilate(0.0, inner)
    with pytest.raises(InvalidParameter):
        Dilate(-2.0, inner)


def test_degenerate_polytopes_rejected():
    with pytest.raises(DegenerateBody):
        Polytope(np.array([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0],
                           [1.0, 1.0, 0.0]]))  # coplanar
    with pytest.raises(DegenerateBody):
        # origin outside the hull
        Polytope(np.array([[1.0, 1.0, 1.0], [2.0, 1.0, 1.0], [1.0, 2.0, 1.0],
                           [1.0, 1.0, 2.0]]))


def test_revolution_profile_validation():
    # not symmetric under theta -> pi - theta
    bad = TrigPolynomial(1.0, (0.3,), ())
    with pytest.raises(InvalidParameter):
        RevolutionBody(bad)
    # symmetric but curvature radius dips negative
    spiky = TrigPolynomial(1.0, (), (0.0, 0.0, 0.9))
    with pytest.raises(InvalidParameter):
        RevolutionBody(spiky)


def test_outer_parallel_support(cube, ball):
    h = outer_parallel_support(cube, ball, 0.5)
    u = np.array([0.0, 0.0, 2.0])
    assert h(u) == pytest.approx(cube.support(u) + 0.5 * ball.support(u))
    with pytest.raises(InvalidParameter):
        outer_parallel_support(cube, ball, -0.1)


def test_rho_extremes_polytope_exact(cube, box242):
    lo, hi = rho_extremes(cube, box242)
    assert lo == 0.5 and hi == 1.0


def test_rho_extremes_axisymmetric(cyl, ball):
    lo, hi = rho_extremes(cyl, ball)
    assert lo == pytest.approx(1.0, abs=1e-10)
    assert hi == pytest.approx(math.sqrt(2.0), abs=1e-10)


def test_rho_extremes_balls_and_dilates(ball):
    lo, hi = rho_extremes(Ball(3.0), Ball(2.0))
    assert lo == pytest.approx(1.5) and hi == pytest.approx(1.5)
    K = Box((1.0, 2.0, 0.5))
    lo, hi = rho_extremes(K, Dilate(2.0, K))
    assert lo == pytest.approx(0.5, abs=1e-12)
    assert hi == pytest.approx(0.5, abs=1e-12)


def test_rho_reciprocal_pairing(body_zoo):
    # the last pair has no shared rotation axis, forcing the grid search path
    bumpy = RevolutionBody(TrigPolynomial(1.0, (), (0.0, 0.0, 0.05)))
    pairs = list(zip(body_zoo[:4], body_zoo[4:8])) + [(bumpy, Cylinder(1.0, 1.0))]
    for K, L in pairs:
        lo_kl, hi_kl = rho_extremes(K, L)
        lo_lk, hi_lk = rho_extremes(L, K)
        assert lo_kl * hi_lk == pytest.approx(1.0, rel=1e-9)
        assert hi_kl * lo_lk == pytest.approx(1.0, rel=1e-9)


def test_rho_extremes_generic_smooth_pair():
    # revolution body against an offset-free smooth pair exercises the grid path
    profile = TrigPolynomial(1.0, (), (0.0, 0.0, 0.05))
    body = RevolutionBody(profile)
    lo, hi = rho_extremes(body, Ball(1.0))
    # the profile perturbation moves support by at most 0.05
    assert 0.94 <= lo <= 1.0 <= hi <= 1.06
    lo2, hi2 = rho_extremes(body, body)
    assert lo2 == pytest.approx(1.0, abs=1e-10)
    assert hi2 == pytest.approx(1.0, abs=1e-10)
