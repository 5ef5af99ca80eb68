import numpy as np

from spherelab import SphericalDensity, TransformSpec, cosine, lp_cosine, radon, zonotope_support

# A density on the circle and on the 2-sphere. Presets are named, so every
# run sees the same function.
f2 = SphericalDensity.preset("constant", 2)
f3 = SphericalDensity.preset("constant", 3)

# Cosine transform of f = 1: the integral of |<x, xi>| over S^1 is 4|x|,
# over S^2 it is 2 pi |x|
print("S^1:", cosine(f2, [1.0, 0.0]))
print("S^2:", cosine(f3, [0.0, 0.0, 1.0]), "vs 2 pi =", 2 * np.pi)

# The L^p version is positively homogeneous of degree p
spec = TransformSpec(p=2.5, dim=3)
x = np.array([0.3, -0.4, 0.8])
print("H^p(2x) / H^p(x) =", lp_cosine(f3, spec, 2 * x) / lp_cosine(f3, spec, x), " 2^2.5 =", 2 ** 2.5)

# Radon transform: the integral over the great circle orthogonal to x
f = SphericalDensity.preset("zonal", 3, axis=[0, 0, 1], eps=1.0, power=2)
for x in np.eye(3):
    print("R f at", x, "=", round(radon(f, x), 10))
# (1 + xi_3^2 integrated over the equator is 2 pi; over a meridian 3 pi)

# Finitely many atoms give a zonotope: T f(x) = sum lambda_i |<x, u_i>|
atoms = [([1.0, 0.0, 0.0], 1.0), ([0.0, 1.0, 0.0], 0.5), ([1.0, 1.0, 1.0], 2.0)]
Z = SphericalDensity.from_atoms(atoms)
x = np.array([0.2, -1.0, 0.7])
print("zonotope support:", zonotope_support(Z, x), " T f:", cosine(Z, x))

# Densities round-trip through JSON (the CLI's --density format)
text = f.to_json()
print(text)
print(SphericalDensity.from_json(text) == f)
