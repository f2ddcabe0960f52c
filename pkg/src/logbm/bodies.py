"""Convex bodies in R^3 with closed-form support functions.

Every body here contains the origin in its interior and evaluates its support
function h(u) = max {u . x : x in body} exactly, vectorized over direction
arrays.  Support evaluators are positively 1-homogeneous, so they accept any
nonzero vectors, not just unit ones.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import DegenerateBody, InvalidParameter

_EZ = np.array([0.0, 0.0, 1.0])
_EY = np.array([0.0, 1.0, 0.0])


def as_direction_rows(u):
    """Coerce a single vector or an (N,3) array to rows; report if input was single."""
    a = np.asarray(u, dtype=float)
    if a.ndim == 1:
        return a.reshape(1, 3), True
    if a.ndim != 2 or a.shape[1] != 3:
        raise InvalidParameter(f"expected shape (3,) or (N,3), got {a.shape}")
    return a, False


def _scalar_or_array(values, single):
    return float(values[0]) if single else values


class TrigPolynomial:
    """Finite Fourier series a0 + sum_k (a_k cos k*theta + b_k sin k*theta)."""

    __slots__ = ("a0", "cos_coeffs", "sin_coeffs")

    def __init__(self, a0=0.0, cos_coeffs=(), sin_coeffs=()):
        self.a0 = float(a0)
        self.cos_coeffs = np.asarray(cos_coeffs, dtype=float)
        self.sin_coeffs = np.asarray(sin_coeffs, dtype=float)
        if self.cos_coeffs.ndim != 1 or self.sin_coeffs.ndim != 1:
            raise InvalidParameter("coefficient lists must be one dimensional")
        if not (np.all(np.isfinite(self.cos_coeffs)) and np.all(np.isfinite(self.sin_coeffs))
                and math.isfinite(self.a0)):
            raise InvalidParameter("coefficients must be finite")

    @property
    def max_frequency(self):
        return max(len(self.cos_coeffs), len(self.sin_coeffs))

    def __call__(self, theta):
        t = np.asarray(theta, dtype=float)
        out = np.full(t.shape, self.a0)
        if len(self.cos_coeffs):
            k = np.arange(1, len(self.cos_coeffs) + 1)
            out = out + np.cos(np.multiply.outer(t, k)) @ self.cos_coeffs
        if len(self.sin_coeffs):
            k = np.arange(1, len(self.sin_coeffs) + 1)
            out = out + np.sin(np.multiply.outer(t, k)) @ self.sin_coeffs
        return out if out.ndim else float(out)

    def derivative(self):
        n = self.max_frequency
        a = np.zeros(n)
        b = np.zeros(n)
        a[: len(self.cos_coeffs)] = self.cos_coeffs
        b[: len(self.sin_coeffs)] = self.sin_coeffs
        k = np.arange(1, n + 1)
        # d/dt: a cos kt -> -a k sin kt ; b sin kt -> b k cos kt
        return TrigPolynomial(0.0, k * b, -k * a)

    def plus_second_derivative(self):
        """The series of h + h'', the planar curvature radius of a support profile."""
        n = self.max_frequency
        a = np.zeros(n)
        b = np.zeros(n)
        a[: len(self.cos_coeffs)] = self.cos_coeffs
        b[: len(self.sin_coeffs)] = self.sin_coeffs
        k = np.arange(1, n + 1)
        f = 1.0 - k.astype(float) ** 2
        return TrigPolynomial(self.a0, f * a, f * b)

    def exponential_coeffs(self):
        """Coefficients e_m, m = -M..M, with h(t) = sum e_m exp(i m t).

        Returns (freqs, coeffs) as integer and complex arrays.
        """
        n = self.max_frequency
        a = np.zeros(n)
        b = np.zeros(n)
        a[: len(self.cos_coeffs)] = self.cos_coeffs
        b[: len(self.sin_coeffs)] = self.sin_coeffs
        freqs = np.arange(-n, n + 1)
        coeffs = np.zeros(2 * n + 1, dtype=complex)
        coeffs[n] = self.a0
        for k in range(1, n + 1):
            coeffs[n + k] = 0.5 * (a[k - 1] - 1j * b[k - 1])
            coeffs[n - k] = 0.5 * (a[k - 1] + 1j * b[k - 1])
        return freqs, coeffs


class ConvexBody:
    """Abstract base.  Instances are immutable after construction."""

    def support(self, u):
        raise NotImplementedError

    def support_witness(self, u):
        raise NotImplementedError


class Ball(ConvexBody):
    def __init__(self, radius):
        radius = float(radius)
        if not (radius > 0 and math.isfinite(radius)):
            raise InvalidParameter("ball radius must be positive")
        self.radius = radius

    def support(self, u):
        rows, single = as_direction_rows(u)
        return _scalar_or_array(self.radius * np.linalg.norm(rows, axis=1), single)

    def support_witness(self, u):
        rows, single = as_direction_rows(u)
        n = np.linalg.norm(rows, axis=1, keepdims=True)
        w = self.radius * rows / n
        return w[0] if single else w

    def __repr__(self):
        return f"Ball(radius={self.radius})"


class Box(ConvexBody):
    """Axis-aligned, origin-centered box given by its half extents."""

    def __init__(self, half_extents):
        he = np.asarray(half_extents, dtype=float)
        if he.shape != (3,) or not np.all(he > 0) or not np.all(np.isfinite(he)):
            raise InvalidParameter("box half extents must be three positive reals")
        self.half_extents = he

    def support(self, u):
        rows, single = as_direction_rows(u)
        return _scalar_or_array(np.abs(rows) @ self.half_extents, single)

    def support_witness(self, u):
        rows, single = as_direction_rows(u)
        w = np.where(rows >= 0, self.half_extents, -self.half_extents)
        return w[0] if single else w

    def corner_vertices(self):
        a, b, c = self.half_extents
        signs = np.array([[sx, sy, sz] for sx in (-1, 1) for sy in (-1, 1) for sz in (-1, 1)],
                         dtype=float)
        return signs * np.array([a, b, c])

    def __repr__(self):
        return f"Box(half_extents={tuple(self.half_extents)})"


class Cylinder(ConvexBody):
    """Solid cylinder around the z axis: radius in xy, extent [-h, h] in z."""

    def __init__(self, radius, half_height):
        radius, half_height = float(radius), float(half_height)
        if not (radius > 0 and half_height > 0):
            raise InvalidParameter("cylinder radius and half height must be positive")
        self.radius = radius
        self.half_height = half_height

    def support(self, u):
        rows, single = as_direction_rows(u)
        vals = self.radius * np.hypot(rows[:, 0], rows[:, 1]) + self.half_height * np.abs(rows[:, 2])
        return _scalar_or_array(vals, single)

    def support_witness(self, u):
        rows, single = as_direction_rows(u)
        s = np.hypot(rows[:, 0], rows[:, 1])
        safe = np.where(s > 0, s, 1.0)
        w = np.empty_like(rows)
        w[:, 0] = self.radius * rows[:, 0] / safe
        w[:, 1] = self.radius * rows[:, 1] / safe
        w[:, 0][s == 0] = 0.0
        w[:, 1][s == 0] = 0.0
        w[:, 2] = self.half_height * np.sign(rows[:, 2])
        return w[0] if single else w

    def __repr__(self):
        return f"Cylinder(radius={self.radius}, half_height={self.half_height})"


class Polytope(ConvexBody):
    """Convex hull of a finite point set with the origin interior.

    The stored vertex list is the input list; facet data comes from the hull
    of that list, with coplanar triangles merged into geometric facets.
    """

    def __init__(self, vertices):
        v = np.asarray(vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 3 or v.shape[0] < 4:
            raise DegenerateBody("a polytope needs at least four 3D points")
        if not np.all(np.isfinite(v)):
            raise DegenerateBody("polytope vertices must be finite")
        self.vertices = v
        self._hull_data = None
        self._facet_data()  # validate full dimension and origin position eagerly

    def _facet_data(self):
        if self._hull_data is None:
            from ._hulls import merged_facets  # local import, avoids cycle at module load
            self._hull_data = merged_facets(self.vertices)
            if np.min(self._hull_data["offsets"]) <= 0:
                raise DegenerateBody("origin must lie strictly inside the polytope")
        return self._hull_data

    @property
    def facet_normals(self):
        return self._facet_data()["normals"]

    @property
    def facet_areas(self):
        return self._facet_data()["areas"]

    @property
    def facet_offsets(self):
        return self._facet_data()["offsets"]

    @property
    def hull_volume(self):
        return self._facet_data()["volume"]

    def support(self, u):
        rows, single = as_direction_rows(u)
        return _scalar_or_array(np.max(rows @ self.vertices.T, axis=1), single)

    def support_witness(self, u):
        rows, single = as_direction_rows(u)
        idx = np.argmax(rows @ self.vertices.T, axis=1)  # first max wins ties
        w = self.vertices[idx]
        return w[0] if single else w

    def support_argmax(self, u):
        """Index of the attaining vertex, lowest index on ties."""
        rows, single = as_direction_rows(u)
        idx = np.argmax(rows @ self.vertices.T, axis=1)
        return int(idx[0]) if single else idx

    def __repr__(self):
        return f"Polytope(<{len(self.vertices)} points>)"


class RevolutionBody(ConvexBody):
    """Body of revolution about the y axis built from a planar support profile.

    The profile h(theta) is the support function of a planar convex body in
    the (x, y) plane, theta measured from the +x axis.  It must be symmetric
    under theta -> pi - theta, otherwise rotation about y is ill defined.
    """

    _N_CHECK = 4096

    def __init__(self, profile: TrigPolynomial):
        self.profile = profile
        self._d1 = profile.derivative()
        self._curv = profile.plus_second_derivative()
        t = np.linspace(-math.pi, math.pi, self._N_CHECK, endpoint=False)
        h = profile(t)
        scale = float(np.max(np.abs(h))) or 1.0
        if np.max(np.abs(profile(math.pi - t) - h)) > 1e-10 * scale:
            raise InvalidParameter("profile must be symmetric under theta -> pi - theta")
        if np.min(self._curv(t)) <= 0:
            raise InvalidParameter("profile curvature radius h + h'' must stay positive")
        if np.min(h) <= 0:
            raise InvalidParameter("profile must keep the origin interior (h > 0)")

    def latitude(self, u):
        """Angle from the equatorial plane toward +y, in [-pi/2, pi/2]."""
        rows, _ = as_direction_rows(u)
        n = np.linalg.norm(rows, axis=1)
        return np.arcsin(np.clip(rows[:, 1] / n, -1.0, 1.0))

    def support(self, u):
        rows, single = as_direction_rows(u)
        n = np.linalg.norm(rows, axis=1)
        lat = np.arcsin(np.clip(rows[:, 1] / n, -1.0, 1.0))
        return _scalar_or_array(n * self.profile(lat), single)

    def support_witness(self, u):
        rows, single = as_direction_rows(u)
        n = np.linalg.norm(rows, axis=1)
        lat = np.arcsin(np.clip(rows[:, 1] / n, -1.0, 1.0))
        h = self.profile(lat)
        dh = self._d1(lat)
        radial = h * np.cos(lat) - dh * np.sin(lat)   # distance from the axis
        axial = h * np.sin(lat) + dh * np.cos(lat)
        s = np.hypot(rows[:, 0], rows[:, 2])
        safe = np.where(s > 0, s, 1.0)
        w = np.empty_like(rows)
        w[:, 0] = radial * rows[:, 0] / safe
        w[:, 2] = radial * rows[:, 2] / safe
        w[:, 0][s == 0] = radial[s == 0]  # at the poles radial = 0 for valid profiles
        w[:, 2][s == 0] = 0.0
        w[:, 1] = axial
        return w[0] if single else w

    def __repr__(self):
        return f"RevolutionBody(profile with max frequency {self.profile.max_frequency})"


class Dilate(ConvexBody):
    """Scaled copy factor * inner.  Nested dilates flatten at construction."""

    def __init__(self, factor, inner: ConvexBody):
        factor = float(factor)
        if not (factor > 0 and math.isfinite(factor)):
            raise InvalidParameter("dilation factor must be positive")
        while isinstance(inner, Dilate):
            factor *= inner.factor
            inner = inner.inner
        self.factor = factor
        self.inner = inner

    def support(self, u):
        h = self.inner.support(u)
        return self.factor * h

    def support_witness(self, u):
        return self.factor * self.inner.support_witness(u)

    def __repr__(self):
        return f"Dilate({self.factor}, {self.inner!r})"


def support(body: ConvexBody, u):
    """Module-level support evaluator, h_body(u)."""
    return body.support(u)


def support_witness(body: ConvexBody, u):
    """A point of the body attaining the support value in direction u."""
    return body.support_witness(u)


def outer_parallel_support(K: ConvexBody, L: ConvexBody, t):
    """Support evaluator of the Minkowski sum K + t L, as a plain callable."""
    t = float(t)
    if t < 0:
        raise InvalidParameter("outer parallel parameter t must be nonnegative")

    def h(u):
        return K.support(u) + t * L.support(u)

    return h


# ---------------------------------------------------------------------------
# Radial ratio extremes r_o, R_o
# ---------------------------------------------------------------------------

def vertex_representation(body):
    """Vertex array for polytopal bodies (Polytope, Box, dilates of those), else None."""
    if isinstance(body, Polytope):
        return body.vertices
    if isinstance(body, Box):
        return body.corner_vertices()
    if isinstance(body, Dilate):
        inner = vertex_representation(body.inner)
        if inner is not None:
            return body.factor * inner
    return None


def facet_normals_of(body):
    """Outward unit facet normals for polytopal bodies, else None."""
    if isinstance(body, Polytope):
        return body.facet_normals
    if isinstance(body, Box):
        return np.vstack([np.eye(3), -np.eye(3)])
    if isinstance(body, Dilate):
        return facet_normals_of(body.inner)
    return None


def symmetry_axis(body):
    """Rotation axis of the body: a unit vector, the string "any", or None."""
    if isinstance(body, Ball):
        return "any"
    if isinstance(body, Cylinder):
        return _EZ
    if isinstance(body, RevolutionBody):
        return _EY
    if isinstance(body, Dilate):
        return symmetry_axis(body.inner)
    return None


def _common_axis(K, L):
    a, b = symmetry_axis(K), symmetry_axis(L)
    if a is None or b is None:
        return None
    if isinstance(a, str):
        return _EZ if isinstance(b, str) else b
    if isinstance(b, str):
        return a
    return a if abs(float(a @ b)) > 1.0 - 1e-12 else None


def _golden_min(f, a, b, tol=1e-12):
    """Golden-section minimizer on [a, b]; returns (x, f(x))."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def _refine_1d(g, ts, minimize):
    """Refine the local extrema of the sampled values g(ts) by golden section.

    Flat stretches make every interior sample a weak local minimum, so the
    candidate list is capped to the best few windows; the global grid minimum
    is always among them.
    """
    vals = g(ts)
    sign = 1.0 if minimize else -1.0
    y = sign * vals
    best = float(np.min(y))
    n = len(ts)
    idx = [0, n - 1] + [i for i in range(1, n - 1) if y[i] <= y[i - 1] and y[i] <= y[i + 1]]
    if len(idx) > 24:
        idx = sorted(idx, key=lambda i: y[i])[:24]
    for i in idx:
        lo = ts[max(i - 1, 0)]
        hi = ts[min(i + 1, n - 1)]
        if hi > lo:
            _, fv = _golden_min(lambda t: float(sign * g(np.array([t]))[0]), lo, hi)
            best = min(best, fv)
        else:
            best = min(best, float(y[i]))
    return sign * best


def _tangent_frame(u):
    a = np.array([1.0, 0.0, 0.0]) if abs(u[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = np.cross(u, a)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(u, e1)
    return e1, e2


def _refine_on_sphere(g, u0, window, minimize, rounds=4):
    """Derivative-free local refinement of g over the sphere near u0."""
    sign = 1.0 if minimize else -1.0
    u = np.array(u0, dtype=float)
    for _ in range(rounds):
        for axis in _tangent_frame(u):
            def along(t, u=u, axis=axis):
                v = math.cos(t) * u + math.sin(t) * axis
                return sign * float(g(v.reshape(1, 3))[0])
            t, _ = _golden_min(along, -window, window, tol=1e-12)
            u = math.cos(t) * u + math.sin(t) * axis
            u /= np.linalg.norm(u)
        window *= 0.35
    return float(g(u.reshape(1, 3))[0])


def _ratio_fn(K, L):
    def g(rows):
        hk = np.atleast_1d(K.support(rows))
        hl = np.atleast_1d(L.support(rows))
        if np.any(hl <= 0):
            raise DegenerateBody("support of the reference body is not positive")
        return hk / hl
    return g


def rho_extremes(K: ConvexBody, L: ConvexBody, sampling=None):
    """Extremes (r_o, R_o) of the support ratio h_K/h_L over the sphere.

    Polytopal pairs are exact: the minimum is attained at a facet normal of K
    and the maximum at a facet normal of L (containment tests reduce to those
    normals), and vertex directions are thrown in as a harmless superset.
    Pairs sharing a rotation axis reduce to a 1D search over the polar angle.
    Everything else is sampled on a dense geodesic grid and polished locally.
    """
    g = _ratio_fn(K, L)
    nk, nl = facet_normals_of(K), facet_normals_of(L)

    if nk is not None and nl is not None:
        cands = [nk, nl]
        for body in (K, L):
            v = vertex_representation(body)
            norms = np.linalg.norm(v, axis=1, keepdims=True)
            cands.append(v / norms)
        rows = np.vstack(cands)
        vals = g(rows)
        return float(np.min(vals)), float(np.max(vals))

    axis = _common_axis(K, L)
    if axis is not None:
        e1, _ = _tangent_frame(axis)

        def along(ts):
            rows = np.outer(np.cos(ts), axis) + np.outer(np.sin(ts), e1)
            return g(rows)

        ts = np.linspace(0.0, math.pi, 8192)
        lo = _refine_1d(along, ts, minimize=True)
        hi = _refine_1d(along, ts, minimize=False)
        return float(lo), float(hi)

    if sampling is not None:
        dirs = np.asarray(sampling.directions, dtype=float)
    else:
        from ._grids import geodesic_directions
        dirs = geodesic_directions(5)  # 40962 directions
    extra = [dirs]
    for body, normals in ((K, nk), (L, nl)):
        if normals is not None:
            extra.append(normals)
            v = vertex_representation(body)
            extra.append(v / np.linalg.norm(v, axis=1, keepdims=True))
    dirs = np.vstack(extra)
    vals = g(dirs)
    spacing = 4.0 / math.sqrt(len(dirs))
    order = np.argsort(vals)
    lo = float(vals[order[0]])
    hi = float(vals[order[-1]])
    for i in order[:8]:
        lo = min(lo, _refine_on_sphere(g, dirs[i], spacing, minimize=True))
    for i in order[-8:]:
        hi = max(hi, _refine_on_sphere(g, dirs[i], spacing, minimize=False))
    return lo, hi
