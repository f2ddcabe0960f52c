"""Icosahedral geodesic point sets on the unit sphere.

Subdivision level ell has 10 * 4^ell + 2 vertices; the public resolution r
maps to level r + 1 (resolution 0 is the icosahedron plus edge midpoints,
42 directions).  Successive levels are nested: a level's vertex list is a
prefix of the next one.  The sets are exactly antipodally closed in IEEE
arithmetic once signed zeros are canonicalized, which the constructor does.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

_GOLD = (1.0 + np.sqrt(5.0)) / 2.0

_ICO_VERTS = np.array([
    (-1.0, _GOLD, 0.0), (1.0, _GOLD, 0.0), (-1.0, -_GOLD, 0.0), (1.0, -_GOLD, 0.0),
    (0.0, -1.0, _GOLD), (0.0, 1.0, _GOLD), (0.0, -1.0, -_GOLD), (0.0, 1.0, -_GOLD),
    (_GOLD, 0.0, -1.0), (_GOLD, 0.0, 1.0), (-_GOLD, 0.0, -1.0), (-_GOLD, 0.0, 1.0),
])

_ICO_FACES = [
    (0, 11, 5), (0, 5, 1), (0, 1, 7), (0, 7, 10), (0, 10, 11),
    (1, 5, 9), (5, 11, 4), (11, 10, 2), (10, 7, 6), (7, 1, 8),
    (3, 9, 4), (3, 4, 2), (3, 2, 6), (3, 6, 8), (3, 8, 9),
    (4, 9, 5), (2, 4, 11), (6, 2, 10), (8, 6, 7), (9, 8, 1),
]


def _canonical(verts):
    # -0.0 + 0.0 = +0.0, which keeps antipodal pairs byte-exact negatives
    return verts + 0.0


@lru_cache(maxsize=12)
def _mesh(level):
    if level == 0:
        verts = _ICO_VERTS / np.linalg.norm(_ICO_VERTS, axis=1, keepdims=True)
        return _canonical(verts), list(_ICO_FACES)
    base_verts, base_faces = _mesh(level - 1)
    verts = [tuple(v) for v in base_verts]
    cache = {}

    def midpoint(i, j):
        key = (i, j) if i < j else (j, i)
        idx = cache.get(key)
        if idx is None:
            m = np.asarray(verts[i]) + np.asarray(verts[j])
            m /= np.linalg.norm(m)
            idx = len(verts)
            verts.append(tuple(m))
            cache[key] = idx
        return idx

    faces = []
    for a, b, c in base_faces:
        ab, bc, ca = midpoint(a, b), midpoint(b, c), midpoint(c, a)
        faces.extend([(a, ab, ca), (b, bc, ab), (c, ca, bc), (ab, bc, ca)])
    return _canonical(np.asarray(verts)), faces


def geodesic_directions(resolution):
    """Unit directions of the grid at the given resolution (level resolution + 1)."""
    verts, _ = _mesh(resolution + 1)
    return verts


def geodesic_faces(resolution):
    _, faces = _mesh(resolution + 1)
    return faces
