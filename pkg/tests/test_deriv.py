import itertools
import math

import numpy as np
import pytest

from spherelab.deriv import (
    MultiIndex,
    analytic_deriv_frac,
    analytic_deriv_odd,
    finite_diff,
    grad_Hp,
    hessian_H,
    hessian_H_p1,
    hessian_Hp,
    hessian_report,
)
from spherelab.errors import DomainError
from spherelab.specfun import c_const
from spherelab.transforms import SphericalDensity, TransformSpec, cap_cosine_transform, lp_cosine, support_value

from conftest import random_unit
from oracles import constant_lp_coefficient, radial_power_derivative

CONST2 = SphericalDensity.preset("constant", 2)
CONST3 = SphericalDensity.preset("constant", 3)
E3 = np.array([0.0, 0.0, 1.0])


def multi_indices(n, order):
    return sorted({tuple(np.bincount(c, minlength=n)) for c in itertools.combinations_with_replacement(range(n), order)})


def smooth_presets3():
    return [
        SphericalDensity.preset("quadratic", 3, matrix=[[2, 0.3, 0], [0.3, 1, 0.2], [0, 0.2, 1.5]]),
        SphericalDensity.preset("zonal", 3, axis=[1, -2, 0.5], eps=0.8, power=4),
        SphericalDensity.preset("harmonic", 3, coeffs=[[2, 1, 0.5], [4, -2, 0.3]], offset=1.0),
    ]


def close(a, b):
    return abs(a - b) <= max(1e-4, 1e-3 * abs(b))


# ------------------------------------------------------------ multi-index

def test_multi_index():
    a = MultiIndex((2, 0, 1))
    assert a.order == 3 and len(a) == 3
    assert MultiIndex.unit(3, 0, 0) == MultiIndex((2, 0, 0))
    X = np.array([[2.0, 5.0, 3.0]])
    assert a.monomial(X)[0] == 12.0
    with pytest.raises(ValueError):
        MultiIndex((1, -1))


# -------------------------------------------------------- odd-exponent formula

def test_odd_formula_example():
    assert analytic_deriv_odd(CONST3, 0, (2, 0, 0), E3) == pytest.approx(2 * math.pi, abs=1e-12)
    assert c_const(1) * (-1) ** 1 == pytest.approx(2.0)
    assert analytic_deriv_odd(CONST3, 0, (1, 1, 0), E3) == pytest.approx(0.0, abs=1e-13)


def test_odd_formula_errors():
    with pytest.raises(ValueError):
        analytic_deriv_odd(CONST3, 0, (2, 1, 0), E3)
    with pytest.raises(ValueError):
        analytic_deriv_odd(CONST3, 0, (2, 0, 0), np.zeros(3))
    with pytest.raises(DomainError):
        analytic_deriv_odd(SphericalDensity.from_atoms([(E3, 1.0)]), 0, (2, 0, 0), [1.0, 0.0, 0.0])


@pytest.mark.parametrize("n,k", [(2, 0), (3, 0), (2, 1), (3, 1), (4, 0), (2, 2)])
def test_odd_formula_symbolic_oracle(n, k, rng):
    # f == 1: H^p = c |x|^p exactly, differentiate symbolically
    p = 2 * k + 1
    f = SphericalDensity.preset("constant", n)
    c = constant_lp_coefficient(n, p)
    x = rng.standard_normal(n)
    for alpha in multi_indices(n, 2 * k + 2):
        ref = c * radial_power_derivative(p, alpha, x)
        assert analytic_deriv_odd(f, k, alpha, x, 24) == pytest.approx(ref, rel=1e-10, abs=1e-10)


def test_odd_formula_k1_closed_value():
    # (8/3) d^4/dx_1^4 |x|^3 at (0, 1) = 24
    assert analytic_deriv_odd(CONST2, 1, (4, 0), [0.0, 1.0]) == pytest.approx(24.0, rel=1e-13)


@pytest.mark.parametrize("k", [0, 1, 2])
def test_odd_formula_homogeneity(k, rng):
    f = smooth_presets3()[1]
    x = rng.standard_normal(3)
    for alpha in multi_indices(3, 2 * k + 2)[:6]:
        a = analytic_deriv_odd(f, k, alpha, x)
        assert analytic_deriv_odd(f, k, alpha, 3 * x) == pytest.approx(a / 3, rel=1e-9, abs=1e-12)


@pytest.mark.parametrize("k", [0, 1])
def test_odd_formula_vs_finite_differences(k):
    rng = np.random.default_rng(7 + k)
    p = 2 * k + 1
    for f in smooth_presets3():
        spec = TransformSpec(p, 3)
        fn = lambda y: lp_cosine(f, spec, y)
        for x in random_unit(rng, 3, 20 if k == 0 else 4):
            for alpha in multi_indices(3, 2 * k + 2):
                an = analytic_deriv_odd(f, k, alpha, x)
                assert close(an, finite_diff(fn, alpha, x)), (alpha, x)


# ------------------------------------------------------ fractional formula

def test_frac_formula_example():
    assert analytic_deriv_frac(CONST3, 3.0, (2, 0, 0), E3) == pytest.approx(3 * math.pi, rel=1e-13)
    spec = TransformSpec(2.5, 3)
    fd = finite_diff(lambda y: lp_cosine(CONST3, spec, y), (2, 0, 0), E3)
    assert analytic_deriv_frac(CONST3, 2.5, (2, 0, 0), E3) == pytest.approx(fd, abs=1e-5)


@pytest.mark.parametrize("p,alpha", [
    (2.0, (2, 0, 0)),      # even p
    (1.0, (2, 0, 0)),      # p <= 1
    (2.5, (1, 0, 0)),      # odd order
    (2.5, (0, 0, 0)),      # no derivative
    (2.5, (4, 0, 0)),      # |alpha| >= p + 1
    (3.0, (4, 0, 0)),      # boundary |alpha| = p + 1 belongs to the odd formula
])
def test_frac_formula_preconditions(p, alpha):
    with pytest.raises(ValueError):
        analytic_deriv_frac(CONST3, p, alpha, E3)


def test_frac_boundary_message_points_to_odd_formula():
    with pytest.raises(ValueError, match="analytic_deriv_odd"):
        analytic_deriv_frac(CONST3, 3.0, (2, 2, 0), E3)


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("p", [1.5, 2.5, 3.0, 3.5, 4.5, 5.2])
def test_frac_formula_symbolic_oracle(n, p, rng):
    f = SphericalDensity.preset("constant", n)
    c = constant_lp_coefficient(n, p)
    x = rng.standard_normal(n)
    orders = [m for m in (2, 4) if m < p + 1]
    for m in orders:
        for alpha in multi_indices(n, m):
            ref = c * radial_power_derivative(p, alpha, x)
            assert analytic_deriv_frac(f, p, alpha, x, 32) == pytest.approx(ref, rel=1e-9, abs=1e-9)


@pytest.mark.parametrize("p", [1.5, 2.5, 3.5, 4.5])
def test_frac_formula_vs_finite_differences(p):
    rng = np.random.default_rng(int(10 * p))
    for f in smooth_presets3():
        spec = TransformSpec(p, 3)
        fn = lambda y: lp_cosine(f, spec, y)
        for x in random_unit(rng, 3, 5):
            for m in [m for m in (2, 4) if m < p + 1]:
                for alpha in multi_indices(3, m):
                    an = analytic_deriv_frac(f, p, alpha, x)
                    assert close(an, finite_diff(fn, alpha, x)), (p, alpha, x)


def test_frac_formula_homogeneity(rng):
    f = smooth_presets3()[2]
    x = rng.standard_normal(3)
    for p, alpha in [(1.5, (1, 1, 0)), (2.5, (0, 2, 0)), (4.5, (2, 1, 1)), (3.5, (0, 0, 4))]:
        a = analytic_deriv_frac(f, p, alpha, x)
        assert analytic_deriv_frac(f, p, alpha, 3 * x) == pytest.approx(3 ** (p - sum(alpha)) * a, rel=1e-9)
        assert analytic_deriv_frac(f, p, alpha, 2 * x) == pytest.approx(2 ** (p - sum(alpha)) * a, rel=1e-9)


def test_frac_agrees_with_hessian_at_p3(rng):
    for f in smooth_presets3():
        u = rng.standard_normal(3)
        H = hessian_Hp(f, 3.0, u)
        for i, j in itertools.combinations_with_replacement(range(3), 2):
            a = analytic_deriv_frac(f, 3.0, MultiIndex.unit(3, i, j), u)
            assert a == pytest.approx(H[i, j], rel=1e-8, abs=1e-10)


# --------------------------------------------------------- grad / hessians

def test_grad_examples():
    g = grad_Hp(CONST3, 3.0, E3)
    assert g[0] == pytest.approx(0.0, abs=1e-13)
    spec = TransformSpec(3.0, 3)
    fd = finite_diff(lambda y: lp_cosine(CONST3, spec, y), (0, 0, 1), E3)
    assert g[2] == pytest.approx(fd, abs=1e-6)
    assert g[2] == pytest.approx(3 * constant_lp_coefficient(3, 3), rel=1e-12)
    with pytest.raises(ValueError):
        grad_Hp(CONST3, 3.0, np.zeros(3))


@pytest.mark.parametrize("p", [1.0, 1.5, 2.5, 3.0, 4.2])
def test_grad_euler_and_fd(p, rng):
    for f in smooth_presets3():
        u = rng.standard_normal(3)
        g = grad_Hp(f, p, u)
        spec = TransformSpec(p, 3)
        assert np.dot(g, u) == pytest.approx(p * lp_cosine(f, spec, u), rel=1e-10)
        fn = lambda y: lp_cosine(f, spec, y)
        fd = [finite_diff(fn, MultiIndex.unit(3, i), u) for i in range(3)]
        assert np.allclose(g, fd, rtol=1e-6, atol=1e-7)


def test_grad_atoms_exact(rng):
    atoms = [(random_unit(rng, 3), w) for w in (0.5, 1.0, 2.0)]
    A = SphericalDensity.from_atoms(atoms)
    u = rng.standard_normal(3)
    ref = sum(2.5 * w * abs(a @ u) ** 1.5 * np.sign(a @ u) * a for a, w in atoms)
    assert np.allclose(grad_Hp(A, 2.5, u), ref, rtol=1e-13)
    refH = sum(2.5 * 1.5 * w * abs(a @ u) ** 0.5 * np.outer(a, a) for a, w in atoms)
    assert np.allclose(hessian_Hp(A, 2.5, u), refH, rtol=1e-13)


def test_hessian_Hp_examples(rng):
    H = hessian_Hp(CONST3, 3.0, E3)
    assert H[0, 0] == pytest.approx(3 * math.pi, rel=1e-13)
    assert H[0, 1] == pytest.approx(0.0, abs=1e-13)
    f = smooth_presets3()[0]
    for p in (1.5, 2.5, 3.7):
        u = random_unit(rng, 3)
        H = hessian_Hp(f, p, u)
        trace_ref = p * (p - 1) * lp_cosine_exponent(f, p - 2, u)
        assert np.trace(H) == pytest.approx(trace_ref, rel=1e-12)
        assert np.allclose(H, H.T, atol=1e-12)
        assert np.linalg.eigvalsh(H).min() > 0
    with pytest.raises(ValueError):
        hessian_Hp(CONST3, 1.0, E3)


def lp_cosine_exponent(f, q, u):
    from spherelab.transforms import axis_integral
    return axis_integral(f, u, q)


def test_hessian_H_p1_examples():
    H = hessian_H_p1(CONST3, E3)
    assert H[0, 0] == pytest.approx(2 * math.pi, rel=1e-13)
    assert H[1, 1] == pytest.approx(2 * math.pi, rel=1e-13)
    assert H[2, 2] == pytest.approx(0.0, abs=1e-14)
    # Hessian of 2 pi |x| at a unit vector u: 2 pi (I - u u^T)
    u = np.array([0.6, 0.0, 0.8])
    assert np.allclose(hessian_H_p1(CONST3, u), 2 * math.pi * (np.eye(3) - np.outer(u, u)), atol=1e-12)


def test_hessian_H_p1_matches_odd_formula(rng):
    f = smooth_presets3()[2]
    u = rng.standard_normal(3)
    H = hessian_H_p1(f, u)
    for i, j in itertools.combinations_with_replacement(range(3), 2):
        assert H[i, j] == pytest.approx(analytic_deriv_odd(f, 0, MultiIndex.unit(3, i, j), u), rel=1e-12, abs=1e-13)


def test_hessian_H_examples(rng):
    # n = 2, p = 3: H = (8/3)^(1/3) |x|, Hessian at e_2 is c (I - e2 e2^T)
    c = (8 / 3) ** (1 / 3)
    H = hessian_H(CONST2, 3.0, np.array([0.0, 1.0]))
    assert H[0, 0] == pytest.approx(c, rel=1e-12)
    assert H[1, 1] == pytest.approx(0.0, abs=1e-12)
    for f in smooth_presets3():
        for p in (1.5, 2.5, 3.0):
            u = random_unit(rng, 3)
            H = hessian_H(f, p, u)
            assert np.max(np.abs(H @ u)) < 1e-8 * np.max(np.abs(H))
    with pytest.raises(DomainError):
        hessian_H(SphericalDensity.preset("constant", 3, value=-1.0), 2.5, E3)


def test_hessian_H_vs_finite_differences_of_support():
    rng = np.random.default_rng(99)
    for _ in range(6):
        f = smooth_presets3()[rng.integers(3)]
        p = float(rng.choice([1.5, 2.5, 3.0, 4.5]))
        u = rng.standard_normal(3)
        spec = TransformSpec(p, 3)
        fn = lambda y: support_value(f, spec, y)
        fd = np.array([[finite_diff(fn, MultiIndex.unit(3, i, j), u) for j in range(3)] for i in range(3)])
        assert np.allclose(hessian_H(f, p, u), fd, atol=1e-5)


def test_hessian_report(rng):
    f = smooth_presets3()[0]
    u = random_unit(rng, 3)
    for p in (1.0, 2.5):
        a = hessian_report(f, p, u)
        b = hessian_report(f, p, u, method="finite-difference")
        assert a.method == "analytic" and b.method == "finite-difference"
        for rep in (a, b):
            assert np.allclose(rep.hessian_Hp, rep.hessian_Hp.T, atol=1e-9)
            assert np.allclose(rep.hessian_H, rep.hessian_H.T, atol=1e-9)
            assert rep.euler_residual(p) < 1e-8
        assert np.allclose(a.hessian_H, b.hessian_H, atol=1e-5)
        assert np.allclose(a.grad_Hp, b.grad_Hp, atol=1e-6)
        assert set(a.to_dict()) == {"point", "Hp", "grad_Hp", "hessian_Hp", "hessian_H", "method"}
    with pytest.raises(ValueError):
        hessian_report(f, 2.5, u, method="magic")


# ------------------------------------------------------- finite differences

def test_finite_diff_examples():
    x = np.array([0.3, -1.2, 0.7])
    assert finite_diff(lambda y: y @ y, (2, 0, 0), x) == pytest.approx(2.0, abs=1e-8)
    assert finite_diff(lambda y: abs(y[0]) ** 3, (2, 0), np.array([1.0, 0.0])) == pytest.approx(6.0, abs=1e-6)
    spec = TransformSpec(3.0, 2)
    fd = finite_diff(lambda y: lp_cosine(CONST2, spec, y), (2, 0), np.array([0.0, 1.0]))
    assert fd == pytest.approx(hessian_Hp(CONST2, 3.0, [0.0, 1.0])[0, 0], abs=1e-6)


def test_finite_diff_polynomials(rng):
    x = rng.standard_normal(3)
    fn = lambda y: y[0] ** 3 * y[1] ** 2 + np.sin(y[2])
    assert finite_diff(fn, (3, 1, 0), x) == pytest.approx(12.0 * x[1], abs=1e-5)
    assert finite_diff(fn, (0, 0, 3), x) == pytest.approx(-math.cos(x[2]), abs=1e-6)
    assert finite_diff(fn, (0, 0, 0), x) == pytest.approx(fn(x))


def test_finite_diff_errors():
    with pytest.raises(ValueError):
        finite_diff(lambda y: 0.0, (5, 0), np.ones(2))
    with pytest.raises(ValueError):
        finite_diff(lambda y: 0.0, (1, 0), np.ones(2), h=1e-300)
    with pytest.raises(ValueError):
        finite_diff(lambda y: 0.0, (1, 0), np.ones(2), h=0.0)


def test_cosine_transform_of_cap_is_c1():
    # discontinuous bounded density: gradients of Tf still converge as the step halves
    c, rho = np.array([0.0, 0.0, 1.0]), 0.6
    x = np.array([0.9, 0.2, 0.25])  # x^⊥ cuts through the caps
    fn = lambda y: cap_cosine_transform(c, rho, y)
    steps = [0.04 / 2 ** k for k in range(6)]
    grads = np.array([[finite_diff(fn, MultiIndex.unit(3, i), x, h) for i in range(3)] for h in steps])
    diffs = np.linalg.norm(np.diff(grads, axis=0), axis=1)
    assert np.all(diffs[1:] < diffs[:-1])
    ratios = np.linalg.norm(grads[1:], axis=1) / np.linalg.norm(grads[:-1], axis=1)
    assert abs(ratios[-1] - 1) < 1e-4
    assert diffs[-1] < 1e-4 * np.linalg.norm(grads[-1])
