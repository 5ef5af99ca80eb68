import numpy as np

from spherelab import SphericalDensity, convexity_check, hessian_Hp, lindquist_1, lindquist_p
from spherelab.convexity import direction_grid

# Signed densities may or may not produce support functions. The Lindquist
# criterion decides: for p = 1, the integral of <x, xi>^2 f over u^perp
# must be >= 0 for x in u^perp; for p > 1, the weight |<u, xi>|^(p-2)
# over the whole sphere and every x.

f = SphericalDensity.preset("quadratic", 3, matrix=np.diag([1.0, -1.0, 0.0]))  # xi_1^2 - xi_2^2
e1, e2, e3 = np.eye(3)

print("p=1, u=e1, x=e2:", lindquist_1(f, e1, e2))  # -3 pi / 4
print("p=1, u=e2, x=e1:", lindquist_1(f, e2, e1))  # +3 pi / 4

# the p-criterion is the Hessian of T_p f up to the factor p (p - 1)
p = 2.5
print(lindquist_p(f, p, e1, e2), e2 @ hessian_Hp(f, p, e1) @ e2 / (p * (p - 1)))

# whole-grid verdicts, cross-checked against Hessian eigenvalues
D = direction_grid(3, 40)
for name, g in [("signed", f), ("shifted", SphericalDensity.preset("quadratic", 3, matrix=np.diag([1.0, -1.0, 0.0]), offset=1.5))]:
    rep = convexity_check(g, p, D)
    print(name, "convex:", rep.verdict, " worst criterion:", rep.lindquist_min.min(),
          " max gap to eigenvalue oracle:", rep.max_discrepancy)
