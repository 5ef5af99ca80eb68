"""Boundary meshes of bodies in R^3 and OBJ export."""

import io

import numpy as np
from scipy.spatial import ConvexHull

from .convexity import boundary_point, direction_grid
from .transforms import DEFAULT_LEVEL


def boundary_mesh(f, p, count=500, level=DEFAULT_LEVEL):
    """Boundary points ``grad H(u)`` over a Fibonacci grid, triangulated by their hull.

    Returns ``(vertices, faces, normals)`` with faces as 0-based index
    triples oriented outward.
    """
    if f.dim != 3:
        raise ValueError("meshes are only produced for dim=3")
    normals = direction_grid(3, count)
    verts = np.array([boundary_point(f, p, u, level) for u in normals])
    hull = ConvexHull(verts)
    faces = hull.simplices.copy()
    centre = verts.mean(axis=0)
    for i, (a, b, c) in enumerate(faces):
        nrm = np.cross(verts[b] - verts[a], verts[c] - verts[a])
        if np.dot(nrm, verts[a] - centre) < 0:
            faces[i] = (a, c, b)
    return verts, faces, normals


def obj_text(vertices, faces):
    buf = io.StringIO()
    buf.write("# spherelab boundary mesh\n")
    for v in vertices:
        buf.write("v {:.12g} {:.12g} {:.12g}\n".format(*v))
    for a, b, c in faces:
        buf.write(f"f {a + 1} {b + 1} {c + 1}\n")
    return buf.getvalue()


def parse_obj(text):
    verts, faces = [], []
    for line in text.splitlines():
        parts = line.split()
        if not parts or parts[0].startswith("#"):
            continue
        if parts[0] == "v":
            verts.append([float(s) for s in parts[1:4]])
        elif parts[0] == "f":
            faces.append([int(s.split("/")[0]) - 1 for s in parts[1:4]])
    return np.array(verts), np.array(faces, dtype=int)
