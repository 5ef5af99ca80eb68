import numpy as np

from spherelab import (
    SphericalDensity,
    TransformSpec,
    analytic_deriv_frac,
    analytic_deriv_odd,
    c_const,
    finite_diff,
    lp_cosine,
)

f = SphericalDensity.preset("quadratic", 3, matrix=[[2, 0.3, 0], [0.3, 1, 0.2], [0, 0.2, 1.5]])
x = np.array([0.4, -0.7, 0.6])

# Odd p = 2k + 1: derivatives of order p + 1 collapse to an integral over
# the great subsphere x^perp. k = 0 is the cosine transform itself.
T1 = lambda y: lp_cosine(f, TransformSpec(1.0, 3), y)
for alpha in [(2, 0, 0), (1, 1, 0), (0, 1, 1)]:
    a = analytic_deriv_odd(f, 0, alpha, x)
    print(alpha, "closed form", a, "finite difference", finite_diff(T1, alpha, x))

# Fourth derivatives of T_3 f; finite differences lose a few digits here
T3 = lambda y: lp_cosine(f, TransformSpec(3.0, 3), y)
a = analytic_deriv_odd(f, 1, (2, 2, 0), x)
print("D^(2,2,0) T_3 f:", a, finite_diff(T3, (2, 2, 0), x))

# the subsphere formula is homogeneous of degree -1
print("ratio at 3x:", analytic_deriv_odd(f, 1, (2, 2, 0), 3 * x) / a)

# Non-even p: even-order derivatives below p + 1 are another L^q-cosine
# transform, weighted by xi^alpha, with q = p - |alpha|
for p in (1.5, 2.5, 4.5):
    Tp = lambda y: lp_cosine(f, TransformSpec(p, 3), y)
    a = analytic_deriv_frac(f, p, (1, 1, 0), x)
    print(f"p={p}", a, finite_diff(Tp, (1, 1, 0), x))

# the constant in front: -C_p / C_(p-2) = p (p - 1)
for p in (1.5, 2.5, 3.0, 5.3):
    print(p, -c_const(p) / c_const(p - 2), p * (p - 1))

# The formula refuses what it cannot do
try:
    analytic_deriv_frac(f, 2.0, (2, 0, 0), x)
except ValueError as exc:
    print("even p:", exc)
