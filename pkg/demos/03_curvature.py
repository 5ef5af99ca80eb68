import numpy as np

from spherelab import SphericalDensity, curvature_report, reverse_weingarten

# H = (T_p f)^(1/p) is the support function of a convex body. Its principal
# radii at outer normal u are the eigenvalues of the Hessian of H on u^perp.

# A round body: f = 1 gives H = c |x|, every radius equals c
rw = reverse_weingarten(SphericalDensity.preset("constant", 3), 2.5, [0.0, 0.6, 0.8])
print("round body radii:", rw.radii, " H(u) =", rw.H)

# Positive bounded densities and p > 1 (not an even integer): all radii
# stay away from zero
f = SphericalDensity.preset("zonal", 3, axis=[1, 1, 0], eps=0.9, power=6)
rep = curvature_report(f, 1.5, count=200)
print("min radius / H:", rep.min_relative_radius, " positive everywhere:", rep.verdict)
print("Gauss-Kronecker curvature range:", rep.curvature.min(), rep.curvature.max())

# That fails at p = 1. On the circle the p = 1 radius at normal u is 2 f
# at the direction orthogonal to u. Take a density equal to 1 at +-xi0
# and vanishing on xi0^perp: the body gets a corner with normal xi0.
xi0 = np.array([np.cos(0.4), np.sin(0.4)])
g = SphericalDensity.preset("vanishing", 2, point=xi0.tolist())
print("p = 1,   radius at xi0:", reverse_weingarten(g, 1.0, xi0).radii)
print("p = 1.5, radius at xi0:", reverse_weingarten(g, 1.5, xi0).radii)

# on a uniform grid that also contains xi0
th = 2 * np.pi * np.arange(200) / 200
grid = np.vstack([xi0, np.column_stack([np.cos(th), np.sin(th)])])
for p in (1.0, 1.5):
    rep = curvature_report(g, p, directions=grid)
    print(f"p = {p}: min radius {rep.min_radius:.3e}, positive everywhere: {rep.verdict}")
# for p > 1 the weight |<u, xi>|^(p-2) spreads over the whole circle, so a
# single zero of f no longer matters
