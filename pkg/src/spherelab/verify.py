"""Verification suites run by ``spherelab verify``.

Each check returns a dict ``{name, value, tolerance, passed}``.
"""

import itertools

import numpy as np

from .convexity import convexity_check, curvature_report, direction_grid
from .deriv import analytic_deriv_frac, analytic_deriv_odd, finite_diff
from .harmonics import inversion_ratio_check
from .specfun import is_even_integer
from .transforms import DEFAULT_LEVEL, SphericalDensity, TransformSpec, lp_cosine

SUITES = ("derivatives", "inversion", "convexity", "all")
DEFAULT_TOL = {"derivatives": 1e-4, "inversion": 1e-6}


def _check(name, value, tol, passed=None):
    value = float(value)
    return {"name": name, "value": value, "tolerance": tol,
            "passed": bool(value < tol) if passed is None else bool(passed)}


def second_order_indices(n):
    return [tuple(np.bincount([i, j], minlength=n)) for i, j in itertools.combinations_with_replacement(range(n), 2)]


def derivative_mismatch(f, p, points, level=DEFAULT_LEVEL):
    """Largest relative gap between the closed-form second derivatives and
    finite differences of ``T_p f``, scaled per point by the largest entry."""
    spec = TransformSpec(p, f.dim, level)
    fn = lambda y: lp_cosine(f, spec, y)
    worst = 0.0
    for x in points:
        an, fd = [], []
        for a in second_order_indices(f.dim):
            if p == 1.0:
                an.append(analytic_deriv_odd(f, 0, a, x, level))
            else:
                an.append(analytic_deriv_frac(f, p, a, x, level))
            fd.append(finite_diff(fn, a, x))
        an, fd = np.array(an), np.array(fd)
        worst = max(worst, float(np.max(np.abs(an - fd)) / np.max(np.abs(fd))))
    return worst


def default_presets(n):
    if n == 2:
        return [SphericalDensity.preset("constant", 2), SphericalDensity.preset("bump", 2, eps=0.4, m=1)]
    mats = np.eye(n) + 0.2 * np.ones((n, n))
    axis = np.arange(1, n + 1, dtype=float)
    return [
        SphericalDensity.preset("constant", n),
        SphericalDensity.preset("quadratic", n, matrix=mats.tolist(), offset=0.2),
        SphericalDensity.preset("zonal", n, axis=axis.tolist(), eps=0.7, power=4),
    ]


def suite_derivatives(p=None, dim=3, level=DEFAULT_LEVEL, seed=0, tol=None, density=None):
    tol = DEFAULT_TOL["derivatives"] if tol is None else tol
    ps = [1.0, 1.5, 2.5, 3.0, 3.5] if p is None else [float(p)]
    rng = np.random.default_rng(seed)
    pts = rng.standard_normal((4, dim))
    dens = [density] if density is not None else default_presets(dim)
    out = []
    for pp in ps:
        if pp != 1.0 and (pp <= 1.0 or is_even_integer(pp)):
            raise ValueError(f"p={pp}: second-derivative formulas need p = 1 or p > 1 not an even integer")
        for f in dens:
            label = f.name if f.kind == "preset" else f.kind
            out.append(_check(f"d2 T_{pp:g} {label}", derivative_mismatch(f, pp, pts, level), tol))
    return out


def suite_inversion(lmax=6, level=48, tol=None):
    tol = DEFAULT_TOL["inversion"] if tol is None else tol
    rep = inversion_ratio_check(lmax, level)
    checks = [_check("rho spread", rep.spread, tol)]
    checks.append({"name": "c3", "value": rep.c3, "tolerance": None, "passed": rep.c3 > 0})
    return checks


def suite_convexity(f, p=2.5, grid=50, level=DEFAULT_LEVEL):
    dirs = direction_grid(f.dim, grid)
    conv = convexity_check(f, p, dirs, level)
    checks = [{"name": "lindquist verdict convex", "value": float(conv.lindquist_min.min()),
               "tolerance": -1e-9, "passed": conv.verdict},
              _check("lindquist vs hessian oracle", conv.max_discrepancy, 1e-8)]
    if conv.verdict:
        rep = curvature_report(f, p, dirs, level=level)
        checks.append({"name": "min relative radius", "value": rep.min_relative_radius,
                       "tolerance": 1e-6, "passed": rep.verdict})
    return checks


def run_suite(name, p=None, dim=3, level=DEFAULT_LEVEL, grid=50, seed=0, density=None, tol=None):
    tol = tol or {}
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {SUITES}")
    checks = []
    if name in ("derivatives", "all"):
        checks += suite_derivatives(p, dim, level, seed, tol.get("derivatives"), density)
    if name in ("inversion", "all"):
        checks += suite_inversion(tol=tol.get("inversion"))
    if name in ("convexity", "all"):
        f = density if density is not None else SphericalDensity.preset("constant", dim)
        checks += suite_convexity(f, 2.5 if p is None else p, grid, level)
    return checks
