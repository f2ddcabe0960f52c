"""Surface-area measures, volumes, and the relative quermassintegral vector.

A body's surface-area measure is materialized as a short list of carriers:
point masses at facet normals, a uniform band on a great circle of normals
(the lateral surface of a cylinder), or a smooth axially symmetric density.
Integrals against the measure dispatch per carrier; atoms are summed exactly
and the continuous carriers use panel-doubling Gauss-Legendre quadrature.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import bodies as B
from ._quadrature import adaptive_circle, integrate_axisymmetric, orthogonal_frame
from .errors import DegenerateBody, InvalidInput, InvalidParameter

_EZ = np.array([0.0, 0.0, 1.0])
_EY = np.array([0.0, 1.0, 0.0])

DEFAULT_REL_TOL = 1e-10


class Atoms:
    """Finite set of point masses on the sphere (one per polytope facet)."""

    def __init__(self, normals, masses):
        self.normals = np.asarray(normals, dtype=float)
        self.masses = np.asarray(masses, dtype=float)
        if np.any(self.masses < 0):
            raise InvalidParameter("atom masses must be nonnegative")

    def integrate(self, f, rel_tol=DEFAULT_REL_TOL):
        return float(np.asarray(f(self.normals)) @ self.masses)

    def total_mass(self, rel_tol=DEFAULT_REL_TOL):
        return float(self.masses.sum())

    def scaled(self, s):
        return Atoms(self.normals, s * self.masses)


class EquatorBand:
    """Uniform measure on the great circle of normals orthogonal to plane_normal."""

    def __init__(self, plane_normal, total_mass):
        self.plane_normal = np.asarray(plane_normal, dtype=float)
        self.plane_normal /= np.linalg.norm(self.plane_normal)
        if total_mass < 0:
            raise InvalidParameter("band mass must be nonnegative")
        self._mass = float(total_mass)

    def integrate(self, f, rel_tol=DEFAULT_REL_TOL):
        e1, e2 = orthogonal_frame(self.plane_normal)

        def on_circle(phi):
            dirs = np.cos(phi)[:, None] * e1 + np.sin(phi)[:, None] * e2
            return np.asarray(f(dirs))

        mean = adaptive_circle(on_circle, rel_tol=rel_tol) / (2.0 * math.pi)
        return self._mass * mean

    def total_mass(self, rel_tol=DEFAULT_REL_TOL):
        return self._mass

    def scaled(self, s):
        return EquatorBand(self.plane_normal, s * self._mass)


class AxisymmetricDensity:
    """Smooth density on the sphere depending only on the polar angle from an axis.

    density(t) already includes the area element (for a ball of radius r it is
    r^2 sin t), so the carrier's mass is 2 pi times the integral of density
    over [0, pi].
    """

    def __init__(self, axis, density):
        self.axis = np.asarray(axis, dtype=float)
        self.axis /= np.linalg.norm(self.axis)
        self.density = density

    def integrate(self, f, rel_tol=DEFAULT_REL_TOL):
        return integrate_axisymmetric(self.density, self.axis, f, rel_tol=rel_tol)

    def total_mass(self, rel_tol=DEFAULT_REL_TOL):
        return self.integrate(lambda dirs: np.ones(len(dirs)), rel_tol=rel_tol)

    def scaled(self, s):
        base = self.density
        return AxisymmetricDensity(self.axis, lambda t, base=base, s=s: s * np.asarray(base(t)))


class SurfaceAreaMeasure:
    def __init__(self, carriers):
        self.carriers = list(carriers)

    def integrate(self, f, rel_tol=DEFAULT_REL_TOL):
        return float(sum(c.integrate(f, rel_tol=rel_tol) for c in self.carriers))

    def total_mass(self, rel_tol=DEFAULT_REL_TOL):
        return float(sum(c.total_mass(rel_tol=rel_tol) for c in self.carriers))

    def centroid(self, rel_tol=DEFAULT_REL_TOL):
        """The vector integral of u, which vanishes for any closed body."""
        return np.array([
            self.integrate(lambda d, i=i: d[:, i], rel_tol=rel_tol) for i in range(3)
        ])


def surface_area_measure(body) -> SurfaceAreaMeasure:
    """Materialize the surface-area measure of a body as carriers."""
    cached = getattr(body, "_surface_measure", None)
    if cached is not None:
        return cached

    if isinstance(body, B.Polytope):
        sam = SurfaceAreaMeasure([Atoms(body.facet_normals, body.facet_areas)])
    elif isinstance(body, B.Box):
        a, b, c = body.half_extents
        normals = np.vstack([np.eye(3), -np.eye(3)])
        areas = np.array([4 * b * c, 4 * a * c, 4 * a * b] * 2, dtype=float)
        sam = SurfaceAreaMeasure([Atoms(normals, areas)])
    elif isinstance(body, B.Ball):
        r2 = body.radius ** 2
        sam = SurfaceAreaMeasure([AxisymmetricDensity(_EZ, lambda t: r2 * np.sin(t))])
    elif isinstance(body, B.Cylinder):
        r, h = body.radius, body.half_height
        caps = Atoms(np.array([[0.0, 0.0, 1.0], [0.0, 0.0, -1.0]]),
                     np.array([math.pi * r * r] * 2))
        side = EquatorBand(_EZ, 2.0 * math.pi * r * (2.0 * h))
        sam = SurfaceAreaMeasure([caps, side])
    elif isinstance(body, B.RevolutionBody):
        prof, d1, curv = body.profile, body._d1, body._curv

        def density(t, prof=prof, d1=d1, curv=curv):
            theta = 0.5 * math.pi - np.asarray(t)   # latitude of the profile point
            h = prof(theta)
            radial = h * np.cos(theta) - d1(theta) * np.sin(theta)
            return curv(theta) * radial

        sam = SurfaceAreaMeasure([AxisymmetricDensity(_EY, density)])
    elif isinstance(body, B.Dilate):
        s = body.factor ** 2
        sam = SurfaceAreaMeasure([c.scaled(s) for c in surface_area_measure(body.inner).carriers])
    else:
        raise InvalidParameter(f"unsupported body type {type(body).__name__}")

    body._surface_measure = sam
    return sam


def volume(body, rel_tol=DEFAULT_REL_TOL):
    """V = (1/3) integral of h dS over the body's carriers."""
    cached = getattr(body, "_volume_cache", None)
    if cached is not None:
        return cached
    val = surface_area_measure(body).integrate(body.support, rel_tol=rel_tol) / 3.0
    ref = _polytopal_volume(body)
    if ref is not None and abs(val - ref) > 1e-9 * max(abs(ref), 1e-30):
        raise InvalidInput(
            f"carrier volume {val!r} disagrees with hull volume {ref!r}")
    body._volume_cache = val
    return val


def _polytopal_volume(body):
    if isinstance(body, B.Polytope):
        return body.hull_volume
    if isinstance(body, B.Dilate):
        inner = _polytopal_volume(body.inner)
        if inner is not None:
            return body.factor ** 3 * inner
    return None


@dataclass(frozen=True)
class QuermassVector:
    """Steiner coefficients (w0, w1, w2, w3) of the ordered pair (K, L)."""
    w0: float
    w1: float
    w2: float
    w3: float

    def as_tuple(self):
        return (self.w0, self.w1, self.w2, self.w3)

    def max_abs(self):
        return max(abs(v) for v in self.as_tuple())

    def af_slacks(self):
        """Log-concavity slacks (w1^2 - w0 w2, w2^2 - w1 w3), nonnegative in theory."""
        return (self.w1 ** 2 - self.w0 * self.w2, self.w2 ** 2 - self.w1 * self.w3)

    def to_dict(self):
        return {"w0": self.w0, "w1": self.w1, "w2": self.w2, "w3": self.w3}


def mixed_area_integral(K, L, rel_tol=DEFAULT_REL_TOL):
    """(1/3) integral of h_L against dS_K."""
    return surface_area_measure(K).integrate(L.support, rel_tol=rel_tol) / 3.0


def quermass(K, L, rel_tol=DEFAULT_REL_TOL) -> QuermassVector:
    return QuermassVector(
        w0=volume(K, rel_tol=rel_tol),
        w1=mixed_area_integral(K, L, rel_tol=rel_tol),
        w2=mixed_area_integral(L, K, rel_tol=rel_tol),
        w3=volume(L, rel_tol=rel_tol),
    )


def cone_volume_integral(K, f, rel_tol=DEFAULT_REL_TOL):
    """Integral of f against the cone-volume measure dV_K = (1/3) h_K dS_K."""
    hK = K.support

    def weighted(dirs):
        return np.asarray(f(dirs)) * np.asarray(hK(dirs))

    return surface_area_measure(K).integrate(weighted, rel_tol=rel_tol) / 3.0


def lemma31_integral(K, L, rel_tol=DEFAULT_REL_TOL):
    """Integral of h_K^2 / h_L against dS_K."""
    hK, hL = K.support, L.support

    def ratio(dirs):
        num = np.asarray(hK(dirs)) ** 2
        den = np.asarray(hL(dirs))
        if np.any(den <= 0):
            raise DegenerateBody("reference support vanishes on the carrier")
        return num / den

    return surface_area_measure(K).integrate(ratio, rel_tol=rel_tol)


def steiner_eval(q: QuermassVector, t):
    return q.w0 + 3.0 * q.w1 * t + 3.0 * q.w2 * t * t + q.w3 * t ** 3


def steiner_volume(K, L, t, rel_tol=DEFAULT_REL_TOL):
    """Volume of K + tL from the Steiner polynomial."""
    t = float(t)
    if t < 0:
        raise InvalidParameter("Steiner parameter t must be nonnegative")
    return steiner_eval(quermass(K, L, rel_tol=rel_tol), t)


def quermass_of_sum(q: QuermassVector, t) -> QuermassVector:
    """Quermass vector of the pair (K + tL, L) from that of (K, L).

    Expanding V(K + tL + sL) two ways gives, in R^3,
    w_i(K+tL, L) = sum_{k >= i} C(3,k) C(k,i) / C(3,i) * t^(k-i) * w_k.
    """
    t = float(t)
    w0 = q.w0 + 3 * t * q.w1 + 3 * t * t * q.w2 + t ** 3 * q.w3
    w1 = q.w1 + 2 * t * q.w2 + t * t * q.w3
    w2 = q.w2 + t * q.w3
    return QuermassVector(w0, w1, w2, q.w3)


def minkowski_sum(K, L, t=1.0):
    """Materialize K + tL as a polytope when both bodies are polytopal, else None."""
    vk = B.vertex_representation(K)
    vl = B.vertex_representation(L)
    if vk is None or vl is None:
        return None
    pts = (vk[:, None, :] + t * vl[None, :, :]).reshape(-1, 3)
    return B.Polytope(pts)
