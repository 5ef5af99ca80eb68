import numpy as np

from spherelab import inversion_ratio_check, project, transform_multiplier
from spherelab.harmonics import funk_hecke_multiplier, harmonic_density

# Both transforms commute with rotations, so on S^2 they act on each
# spherical harmonic Y_l^m by a number depending on l alone.
for l in (0, 2, 4, 6):
    r = transform_multiplier("R", l, level=48)
    t = transform_multiplier("T", l, level=48)
    print(f"l={l}  R: {r.value:+.12f} (Funk-Hecke {funk_hecke_multiplier('R', l):+.12f})"
          f"  T: {t.value:+.12f} (Funk-Hecke {funk_hecke_multiplier('T', l):+.12f})")

# the same number for every order m
print([round(transform_multiplier("T", 4, level=48, m=m).value, 12) for m in range(-4, 5)])

# Inverting T amounts to inverting R followed by Delta + 2, up to a single
# constant: r_l / (t_l (2 - l(l+1))) must not depend on l.
rep = inversion_ratio_check(8, level=48)
for l, rho in zip(rep.degrees, rep.rho):
    print(l, rho)
print("spread", rep.spread, " c_3 =", rep.c3)

# projection of a harmonic combination recovers its coefficients
from spherelab import SphericalDensity
f = SphericalDensity.preset("harmonic", 3, coeffs=[[0, 0, 1.0], [2, 1, 0.5], [4, -3, 0.25]])
sp = project(f, 4, level=8)
print({k: round(v, 12) for k, v in sp.coefficients.items() if abs(v) > 1e-12})

# odd harmonics are invisible to both transforms
sp = project(harmonic_density(3, 2, evenized=True), 4, level=8)
print("even part of Y_3^2:", max(abs(c) for c in sp.coefficients.values()))
