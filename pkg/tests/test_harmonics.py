import math

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.special import eval_legendre

from spherelab.harmonics import (
    apply_transform,
    funk_hecke_multiplier,
    harmonic_density,
    inversion_ratio_check,
    project,
    transform_multiplier,
)
from spherelab.specfun import real_sph_harm
from spherelab.transforms import SphericalDensity

from conftest import random_unit


def fh_oracle(which, l):
    if which == "R":
        return 2 * math.pi * eval_legendre(l, 0.0)
    return 2 * math.pi * quad(lambda t: abs(t) * eval_legendre(l, t), -1, 1, points=[0.0], epsabs=1e-14)[0]


def test_project_examples():
    sp = project(SphericalDensity.preset("constant", 3), 4)
    assert sp.coefficients[(0, 0)] == pytest.approx(math.sqrt(4 * math.pi), rel=1e-13)
    assert max(abs(c) for k, c in sp.coefficients.items() if k != (0, 0)) < 1e-13
    assert sp.reconstruction_error < 1e-13
    sp = project(harmonic_density(2, 0), 4, level=8)
    assert sp.coefficients[(2, 0)] == pytest.approx(1.0, abs=1e-12)
    assert sp.degree_norms[2] == pytest.approx(1.0, abs=1e-12)
    assert sum(abs(c) for k, c in sp.coefficients.items() if k != (2, 0)) < 1e-12
    # an odd harmonic has no even part
    sp = project(harmonic_density(3, 1, evenized=True), 4, level=8)
    assert max(abs(c) for c in sp.coefficients.values()) < 1e-13


def test_project_mixed(rng):
    coeffs = [[0, 0, 0.7], [2, -1, 0.3], [4, 3, -1.1], [6, 0, 0.25]]
    f = SphericalDensity.preset("harmonic", 3, coeffs=coeffs)
    sp = project(f, 6, level=10)
    for l, m, c in coeffs:
        assert sp.coefficients[(l, m)] == pytest.approx(c, abs=1e-12)
    assert sp.degree(4)[3] == pytest.approx(-1.1, abs=1e-12)
    assert sp.reconstruction_error < 1e-12


def test_project_errors():
    f = SphericalDensity.preset("constant", 3)
    with pytest.raises(ValueError):
        project(f, 3)
    with pytest.raises(ValueError):
        project(f, 6, level=6)
    with pytest.raises(ValueError):
        project(SphericalDensity.preset("constant", 2), 2)


@pytest.mark.parametrize("l", [0, 2, 4, 6, 8, 10])
def test_funk_hecke_reference(l):
    for which in "RT":
        assert funk_hecke_multiplier(which, l) == pytest.approx(fh_oracle(which, l), rel=1e-12, abs=1e-14)


def test_known_multipliers():
    assert funk_hecke_multiplier("R", 2) == pytest.approx(-math.pi, rel=1e-14)
    assert funk_hecke_multiplier("T", 2) == pytest.approx(math.pi / 2, rel=1e-14)
    assert funk_hecke_multiplier("T", 4) == pytest.approx(-math.pi / 12, rel=1e-14)
    assert funk_hecke_multiplier("T", 0) == pytest.approx(2 * math.pi, rel=1e-14)
    with pytest.raises(ValueError):
        funk_hecke_multiplier("X", 2)


@pytest.mark.parametrize("l", [0, 2, 4, 6])
def test_measured_multipliers(l):
    for which in "RT":
        mult = transform_multiplier(which, l, level=48)
        assert mult.value == pytest.approx(fh_oracle(which, l), abs=1e-6)
        assert mult.residual < 1e-6


@pytest.mark.parametrize("l", [2, 4, 6, 8])
def test_multipliers_diagonal_every_order(l):
    for m in range(-l, l + 1):
        for which in "RT":
            mult = transform_multiplier(which, l, level=48, m=m)
            assert mult.residual < 1e-6, (which, l, m)
            assert mult.value == pytest.approx(fh_oracle(which, l), abs=1e-6)


@pytest.mark.parametrize("l", [1, 3, 5])
def test_odd_harmonics_annihilated(l, rng):
    X = random_unit(rng, 3, 10)
    for m in (-l, 0, l):
        f = harmonic_density(l, m, evenized=False)
        for which in "RT":
            assert np.max(np.abs(apply_transform(which, f, X, level=32))) < 1e-8
    with pytest.raises(ValueError):
        transform_multiplier("T", l)


def test_apply_transform_errors():
    with pytest.raises(ValueError):
        apply_transform("Q", harmonic_density(2, 0), np.eye(3))


def test_harmonic_image_is_multiple(rng):
    # R Y = r_l Y pointwise, not only after projection
    X = random_unit(rng, 3, 8)
    f = harmonic_density(4, -3)
    Y = real_sph_harm(4, -3, X)
    assert np.allclose(apply_transform("R", f, X), fh_oracle("R", 4) * Y, atol=1e-10)
    assert np.allclose(apply_transform("T", f, X), fh_oracle("T", 4) * Y, atol=1e-10)


def test_inversion_ratio_constant():
    rep = inversion_ratio_check(8, level=48)
    assert rep.degrees == [0, 2, 4, 6, 8]
    assert rep.spread < 1e-6
    # oracle: ratio of the reference multipliers
    oracle = [fh_oracle("R", l) / (fh_oracle("T", l) * (2 - l * (l + 1))) for l in rep.degrees]
    assert np.allclose(rep.rho, oracle, rtol=1e-6)
    assert rep.c3 == pytest.approx(oracle[0], rel=1e-6)
    d = rep.to_dict()
    assert d["spread"] == rep.spread and len(d["rho"]) == 5
    with pytest.raises(ValueError):
        inversion_ratio_check(3)
