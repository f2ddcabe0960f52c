"""Bodies of revolution with constant width one, and their exact functionals.

The family is indexed by an integer n >= 1.  The planar support profile is

    h(theta) = 1/2 + sin((2n+1) theta) / (12 n (n+1)),

an odd-frequency perturbation of the disc of width one.  The amplitude keeps
h + h'' >= 1/2 - 1/3 > 0, so each profile is a genuine support function and
the revolved body is convex.  Surface area comes from a closed-form Fourier
computation, volume from the constant-width identity, so the functionals
carry no quadrature error and can serve as references for the measure-based
pipeline.
"""
from __future__ import annotations

import math

import numpy as np

from . import bonnesen as BN
from . import measures as M
from .bodies import RevolutionBody, TrigPolynomial, _refine_1d
from .errors import InvalidInput, InvalidParameter


def make_profile(n: int) -> TrigPolynomial:
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise InvalidParameter("n must be an integer >= 1")
    freq = 2 * n + 1
    amp = 1.0 / (12.0 * n * (n + 1))
    sin_coeffs = np.zeros(freq)
    sin_coeffs[freq - 1] = amp
    return TrigPolynomial(0.5, (), sin_coeffs)


def revolution_body(profile: TrigPolynomial) -> RevolutionBody:
    return RevolutionBody(profile)


def _integral_exponential(freqs, coeffs):
    # integral of exp(i m t) over [-pi/2, pi/2]: pi at m = 0, else 2 sin(m pi/2)/m
    weights = np.where(freqs == 0, math.pi,
                       2.0 * np.sin(freqs * (math.pi / 2.0)) / np.where(freqs == 0, 1, freqs))
    return float(np.real(coeffs @ weights))


def surface_area_revolution(profile: TrigPolynomial) -> float:
    """Area of the boundary of the revolved body, exactly.

    S = 2 pi * integral over theta in [-pi/2, pi/2] of (h^2 - h'^2 / 2) cos(theta).
    The integrand is a trigonometric polynomial, so every term integrates in
    closed form through the exponential basis.
    """
    _, ch = profile.exponential_coeffs()
    _, cd = profile.derivative().exponential_coeffs()
    g = np.convolve(ch, ch) - 0.5 * np.convolve(cd, cd)
    g_cos = np.convolve(g, np.array([0.5, 0.0, 0.5]))
    m = (len(g_cos) - 1) // 2
    freqs = np.arange(-m, m + 1)
    return 2.0 * math.pi * _integral_exponential(freqs, g_cos)


def blaschke_volume(width: float, surface_area: float) -> float:
    """Volume of a constant-width body from its width and surface area.

    V = (w S - (2 pi / 3) w^3) / 2; requires S >= (2 pi / 3) w^2 (attained by
    the ball), otherwise the inputs cannot come from a constant-width body.
    """
    w = float(width)
    s = float(surface_area)
    if w <= 0:
        raise InvalidParameter("width must be positive")
    if s < (2.0 * math.pi / 3.0) * w * w:
        raise InvalidInput("surface area below the constant-width minimum")
    return 0.5 * (w * s - (2.0 * math.pi / 3.0) * w ** 3)


def volume_revolution(profile: TrigPolynomial) -> float:
    return blaschke_volume(2.0 * profile.a0, surface_area_revolution(profile))


def profile_ratio_extremes(p_num: TrigPolynomial, p_den: TrigPolynomial,
                           samples: int = 8192):
    """Extremes of p_num/p_den over latitudes, refined to full precision.

    Because both revolved bodies share the rotation axis, the 3D support
    ratio only depends on the latitude, so these are also the inradius and
    circumradius factors of the pair of bodies.
    """
    ts = np.linspace(-math.pi / 2.0, math.pi / 2.0, samples)

    def g(t):
        return p_num(t) / p_den(t)

    lo = _refine_1d(g, ts, minimize=True)
    hi = _refine_1d(g, ts, minimize=False)
    return float(lo), float(hi)


def reproduce_prop41(n1: int, n2: int) -> BN.BonnesenReport:
    """Bonnesen classification of the pair (body n1, body n2) via closed forms.

    Both bodies have width one, so the mixed quermass entries reduce to the
    surface areas: w1 = S(K1)/6 and w2 = S(K2)/6.  Volumes come from the
    constant-width identity, and the support-ratio extremes from the shared
    axis of revolution.
    """
    p1, p2 = make_profile(n1), make_profile(n2)
    s1, s2 = surface_area_revolution(p1), surface_area_revolution(p2)
    q = M.QuermassVector(blaschke_volume(1.0, s1), s1 / 6.0,
                         s2 / 6.0, blaschke_volume(1.0, s2))
    r_o, R_o = profile_ratio_extremes(p1, p2)
    return BN.report_from_quermass(q, r_o, R_o)


def profile_csv(profile: TrigPolynomial, samples: int = 720) -> str:
    """CSV sampling of the profile and its curvature radius over a full turn."""
    ts = np.linspace(-math.pi, math.pi, samples)
    h = profile(ts)
    cr = profile.plus_second_derivative()(ts)
    lines = ["theta,h,curvature_radius"]
    lines.extend(f"{repr(float(t))},{repr(float(a))},{repr(float(b))}"
                 for t, a, b in zip(ts, h, cr))
    return "\n".join(lines) + "\n"


def revolution_off(body: RevolutionBody, n_lat: int = 64, n_az: int = 128) -> str:
    """OFF mesh of the boundary, outward oriented, poles included."""
    if n_lat < 2 or n_az < 3:
        raise InvalidParameter("need at least 2 latitude rings and 3 azimuths")
    lats = np.linspace(-math.pi / 2.0, math.pi / 2.0, n_lat + 2)[1:-1]
    azs = np.linspace(0.0, 2.0 * math.pi, n_az, endpoint=False)
    dirs = np.empty((n_lat * n_az, 3))
    cl, sl = np.cos(lats), np.sin(lats)
    for j in range(n_lat):
        dirs[j * n_az:(j + 1) * n_az, 0] = cl[j] * np.cos(azs)
        dirs[j * n_az:(j + 1) * n_az, 1] = sl[j]
        dirs[j * n_az:(j + 1) * n_az, 2] = cl[j] * np.sin(azs)
    pts = body.support_witness(dirs)
    south = body.support_witness(np.array([0.0, -1.0, 0.0]))
    north = body.support_witness(np.array([0.0, 1.0, 0.0]))
    verts = np.vstack([pts, south, north])
    i_south, i_north = len(verts) - 2, len(verts) - 1

    faces = []
    ring = lambda j, i: j * n_az + i % n_az
    for i in range(n_az):  # south cap, lowest ring
        faces.append((i_south, ring(0, i), ring(0, i + 1)))
    for j in range(n_lat - 1):
        for i in range(n_az):
            a, b = ring(j, i), ring(j, i + 1)
            c, d = ring(j + 1, i + 1), ring(j + 1, i)
            faces.append((a, b, c))
            faces.append((a, c, d))
    for i in range(n_az):
        faces.append((i_north, ring(n_lat - 1, i + 1), ring(n_lat - 1, i)))

    signed = 0.0
    for f in faces:
        t0, t1, t2 = verts[f[0]], verts[f[1]], verts[f[2]]
        signed += float(np.dot(t0, np.cross(t1, t2)))
    if signed < 0:
        faces = [(f[0], f[2], f[1]) for f in faces]

    lines = ["OFF", f"{len(verts)} {len(faces)} 0"]
    lines.extend(" ".join(repr(float(c)) for c in v) for v in verts)
    lines.extend("3 " + " ".join(str(i) for i in f) for f in faces)
    return "\n".join(lines) + "\n"
