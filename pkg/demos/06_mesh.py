import os
import tempfile

import numpy as np

from spherelab import SphericalDensity, boundary_point, support_value, TransformSpec
from spherelab.mesh import boundary_mesh, obj_text, parse_obj

# The boundary point with outer normal u is grad H(u). Sampling normals on
# a Fibonacci grid and triangulating the hull gives a mesh of the body.
f = SphericalDensity.preset("quadratic", 3, matrix=[[3, 0.5, 0], [0.5, 1, 0], [0, 0, 0.6]], offset=0.1)
p = 2.5
verts, faces, normals = boundary_mesh(f, p, count=400)
print(len(verts), "vertices,", len(faces), "faces")

# every vertex lies in every supporting half-space
spec = TransformSpec(p, 3)
rng = np.random.default_rng(0)
U = rng.standard_normal((50, 3))
U /= np.linalg.norm(U, axis=1, keepdims=True)
H = np.array([support_value(f, spec, u) for u in U])
print("max <v, u> - H(u):", (verts @ U.T - H).max())

# and touches its own supporting plane
u = normals[17]
print(boundary_point(f, p, u) @ u, support_value(f, spec, u))

path = os.path.join(tempfile.gettempdir(), "spherelab_body.obj")
with open(path, "w") as fh:
    fh.write(obj_text(verts, faces))
v2, f2 = parse_obj(open(path).read())
print("wrote", path, v2.shape, f2.shape)
