"""Convex hull facet extraction with coplanar-triangle merging.

qhull reports simplicial facets; integrating against a facet-atom measure
needs one atom per geometric facet, so coplanar triangles are merged here.
Normals are clustered at absolute tolerance 1e-10 and plane offsets at
1e-10 times the bounding radius.
"""
from __future__ import annotations

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .errors import DegenerateBody

_NORMAL_TOL = 1e-10


def merged_facets(points):
    pts = np.asarray(points, dtype=float)
    try:
        hull = ConvexHull(pts)
    except QhullError as exc:
        raise DegenerateBody(f"point set is not full dimensional: {exc}") from exc

    radius = float(np.max(np.linalg.norm(pts, axis=1)))
    offset_tol = 1e-10 * radius
    eqs = hull.equations  # rows (n, c) with n . x + c = 0, n outward unit
    key_n = np.round(eqs[:, :3] / _NORMAL_TOL).astype(np.int64)
    key_c = np.round(eqs[:, 3] / offset_tol).astype(np.int64)

    groups = {}
    for i in range(len(eqs)):
        groups.setdefault((*key_n[i], key_c[i]), []).append(i)

    tri = pts[hull.simplices]  # (S, 3, 3)
    tri_areas = 0.5 * np.linalg.norm(
        np.cross(tri[:, 1] - tri[:, 0], tri[:, 2] - tri[:, 0]), axis=1)

    normals = np.empty((len(groups), 3))
    offsets = np.empty(len(groups))
    areas = np.empty(len(groups))
    for j, members in enumerate(groups.values()):
        n = eqs[members, :3].sum(axis=0)
        n /= np.linalg.norm(n)
        normals[j] = n
        offsets[j] = -float(np.mean(eqs[members, 3]))
        areas[j] = float(tri_areas[members].sum())

    return {
        "normals": normals,
        "offsets": offsets,
        "areas": areas,
        "volume": float(hull.volume),
    }
