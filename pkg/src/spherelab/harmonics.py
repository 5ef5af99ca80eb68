"""Spherical-harmonic analysis on S^2.

Rotation-invariant transforms act on each degree-l harmonic space by a
scalar. This module measures those scalars for the cosine transform ``T``
and the Radon transform ``R`` and checks that

    T^{-1} = c (Delta + n - 1) R^{-1},   Delta Y_l = -l(l+1) Y_l on S^2,

holds with one constant ``c`` for every degree.
"""

from dataclasses import dataclass, field
import json

import numpy as np

from .errors import DomainError
from .specfun import real_sph_harm
from .squad import build_sphere_rule
from .transforms import DEFAULT_LEVEL, SphericalDensity, TransformSpec, lp_cosine, radon

DIM = 3
MULTIPLIER_FLOOR = 1e-12


def harmonic_density(l, m, evenized=False):
    return SphericalDensity.preset("harmonic", DIM, evenized=evenized, coeffs=[[l, m, 1.0]])


@dataclass
class HarmonicSpectrum:
    lmax: int
    coefficients: dict  # (l, m) -> c
    degree_norms: dict = field(default_factory=dict)  # l -> sqrt(sum_m c^2)
    reconstruction_error: float = 0.0

    def degree(self, l):
        return {m: c for (ll, m), c in self.coefficients.items() if ll == l}


def project(f, lmax, level=None):
    """Quadrature projection of ``f`` onto real harmonics of degree <= lmax."""
    if f.dim != DIM:
        raise ValueError("harmonic projection is implemented for S^2 only")
    lmax = int(lmax)
    if lmax < 0 or lmax % 2:
        raise ValueError(f"lmax must be a nonnegative even integer (got {lmax})")
    level = lmax + 1 if level is None else int(level)
    if level <= lmax:
        raise ValueError(f"level {level} cannot resolve degree {lmax}; need level > lmax")
    rule = build_sphere_rule(DIM, level)
    vals = f(rule.nodes)
    coeffs, recon = {}, np.zeros_like(vals)
    for l in range(lmax + 1):
        for m in range(-l, l + 1):
            Y = real_sph_harm(l, m, rule.nodes)
            c = float(np.sum(rule.weights * vals * Y))
            coeffs[(l, m)] = c
            recon += c * Y
    norms = {l: float(np.sqrt(sum(coeffs[(l, m)] ** 2 for m in range(-l, l + 1)))) for l in range(lmax + 1)}
    err = float(np.sqrt(np.sum(rule.weights * (vals - recon) ** 2)))
    scale = float(np.sqrt(np.sum(rule.weights * vals ** 2)))
    return HarmonicSpectrum(lmax, coeffs, norms, err / scale if scale > 0 else err)


def apply_transform(which, f, X, level=DEFAULT_LEVEL):
    """``Tf`` or ``Rf`` at each row of ``X``."""
    if which == "T":
        spec = TransformSpec(1.0, DIM, level)
        return np.array([lp_cosine(f, spec, x) for x in X])
    if which == "R":
        return np.array([radon(f, x, level) for x in X])
    raise ValueError(f"transform must be 'T' or 'R' (got {which!r})")


@dataclass
class Multiplier:
    which: str
    l: int
    m: int
    value: float
    residual: float  # relative L2 norm of the part of the image orthogonal to Y_l^m


def transform_multiplier(which, l, level=DEFAULT_LEVEL, m=0, grid_level=None):
    """Scalar by which ``which`` (``"T"`` or ``"R"``) acts on ``Y_l^m``.

    The image of ``Y_l^m`` is sampled on a sphere rule of ``grid_level``;
    the multiplier is its L2 inner product with ``Y_l^m`` and the residual
    is the relative L2 norm of what is left.
    """
    l = int(l)
    if l % 2:
        raise ValueError("multipliers are defined for even degrees (both transforms kill odd ones)")
    grid_level = l + 2 if grid_level is None else int(grid_level)
    rule = build_sphere_rule(DIM, grid_level)
    img = apply_transform(which, harmonic_density(l, m), rule.nodes, level)
    Y = real_sph_harm(l, m, rule.nodes)
    c = float(np.sum(rule.weights * img * Y))
    rest = img - c * Y
    res = float(np.sqrt(np.sum(rule.weights * rest ** 2)))
    return Multiplier(which, l, m, c, res / abs(c) if c != 0 else float("inf"))


def funk_hecke_multiplier(which, l):
    """Reference multipliers from the 1-D Funk-Hecke integral ``2 pi int K(t) P_l(t) dt``."""
    from numpy.polynomial import legendre as L

    Pl = L.Legendre.basis(l)
    if which == "R":
        return float(2.0 * np.pi * Pl(0.0))
    if which == "T":
        # 2 pi int_{-1}^{1} |t| P_l(t) dt = 4 pi int_0^1 t P_l(t) dt for even l
        poly = (Pl * L.Legendre([0.0, 1.0])).integ()
        return float(4.0 * np.pi * (poly(1.0) - poly(0.0)))
    raise ValueError(which)


@dataclass
class InversionReport:
    degrees: list
    r: list
    t: list
    rho: list
    spread: float
    c3: float

    def to_dict(self):
        return {
            "degrees": self.degrees,
            "radon_multipliers": self.r,
            "cosine_multipliers": self.t,
            "rho": self.rho,
            "spread": self.spread,
            "c3": self.c3,
        }

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)


def inversion_ratio_check(lmax, level=DEFAULT_LEVEL):
    """``rho_l = r_l / (t_l (n - 1 - l(l+n-2)))`` for even ``l <= lmax``, n = 3.

    The inversion relation holds iff ``rho_l`` does not depend on ``l``;
    the common value is the constant ``c_3``.
    """
    lmax = int(lmax)
    if lmax < 4 or lmax % 2:
        raise ValueError("lmax must be an even integer >= 4")
    degrees, rs, ts, rhos = [], [], [], []
    for l in range(0, lmax + 1, 2):
        r = transform_multiplier("R", l, level).value
        t = transform_multiplier("T", l, level).value
        if abs(t) < MULTIPLIER_FLOOR:
            raise DomainError(f"cosine multiplier at l={l} is below the noise floor")
        degrees.append(l)
        rs.append(r)
        ts.append(t)
        rhos.append(r / (t * (DIM - 1 - l * (l + DIM - 2))))
    rho = np.array(rhos)
    mean = float(rho.mean())
    return InversionReport(degrees, rs, ts, rhos, float((rho.max() - rho.min()) / abs(mean)), mean)
