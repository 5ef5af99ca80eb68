"""Curvature and convexity of the body whose support function is
``H = (T_p f)^(1/p)``.

Principal radii of curvature at the outer normal ``u`` are the
eigenvalues of the Hessian of ``H`` restricted to ``u^⊥``.
"""

from dataclasses import dataclass
import json
import math

import numpy as np

from .deriv import grad_Hp, hessian_H, hessian_H_p1, hessian_Hp
from .errors import DomainError
from .linalg import jacobi_eigh
from .squad import build_subsphere_rule, householder_basis
from .transforms import DEFAULT_LEVEL, TransformSpec, axis_integral, lp_cosine

# radius > RADIUS_TOL * H(u) counts as positive
RADIUS_TOL = 1e-6
CONVEX_TOL = -1e-9
ORTHO_TOL = 1e-10


def _unit(u):
    u = np.asarray(u, dtype=float)
    nrm = np.linalg.norm(u)
    if nrm == 0.0:
        raise ValueError("direction must be nonzero")
    return u / nrm


def direction_grid(n, count, seed=0):
    """Near-uniform unit directions.

    Uniform angles for ``n = 2``, a Fibonacci lattice for ``n = 3``, seeded
    Gaussian samples otherwise.
    """
    count = int(count)
    if count < 1:
        raise ValueError("count must be positive")
    if n == 2:
        th = 2.0 * np.pi * np.arange(count) / count
        return np.column_stack([np.cos(th), np.sin(th)])
    if n == 3:
        k = np.arange(count)
        z = 1.0 - (2.0 * k + 1.0) / count
        phi = k * np.pi * (3.0 - math.sqrt(5.0))
        r = np.sqrt(1.0 - z * z)
        return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((count, n))
    return X / np.linalg.norm(X, axis=1, keepdims=True)


def support(f, p, u, level=DEFAULT_LEVEL):
    hp = lp_cosine(f, TransformSpec(p, f.dim, level), u)
    if not hp > 0.0:
        raise DomainError(f"H(u) vanishes or is negative (H^p = {hp:.3e})")
    return hp ** (1.0 / p)


@dataclass
class ReverseWeingarten:
    u: np.ndarray
    tangent_basis: np.ndarray  # (n-1, n), rows span u^⊥
    matrix: np.ndarray
    radii: np.ndarray
    H: float


def reverse_weingarten(f, p, u, level=DEFAULT_LEVEL):
    """Differential of ``grad H`` at the normal ``u``, on the tangent space ``u^⊥``."""
    u = _unit(u)
    H = support(f, p, u, level)
    B = householder_basis(u)[:, :-1]
    W = B.T @ hessian_H(f, p, u, level) @ B
    W = 0.5 * (W + W.T)
    radii, _ = jacobi_eigh(W)
    return ReverseWeingarten(u, B.T, W, radii, H)


def gauss_kronecker(radii):
    """``1 / prod(radii)``; ``inf`` for a vanishing radius."""
    prod = float(np.prod(radii))
    if prod == 0.0:
        return math.inf
    return 1.0 / prod


@dataclass
class CurvatureReport:
    directions: np.ndarray
    radii: np.ndarray
    curvature: np.ndarray
    support: np.ndarray
    p: float

    @property
    def min_radius(self):
        return float(self.radii.min())

    @property
    def min_relative_radius(self):
        return float((self.radii.min(axis=1) / self.support).min())

    @property
    def positive(self):
        """Per-direction verdict: every radius exceeds ``RADIUS_TOL * H(u)``."""
        return np.all(self.radii > RADIUS_TOL * self.support[:, None], axis=1)

    @property
    def verdict(self):
        return bool(np.all(self.positive))

    def to_dict(self):
        curv = [c if math.isfinite(c) else None for c in self.curvature.tolist()]
        return {
            "p": self.p,
            "directions": self.directions.tolist(),
            "radii": self.radii.tolist(),
            "curvature": curv,
            "support": self.support.tolist(),
            "min_radius": self.min_radius,
            "min_curvature": float(np.min(self.curvature)),
            "verdict": self.verdict,
        }

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)


def curvature_report(f, p, directions=None, count=200, level=DEFAULT_LEVEL, seed=0):
    """Principal radii and Gauss-Kronecker curvature over a direction grid."""
    if directions is None:
        directions = direction_grid(f.dim, count, seed)
    directions = np.asarray(directions, dtype=float)
    radii, curv, supp = [], [], []
    for u in directions:
        rw = reverse_weingarten(f, p, u, level)
        radii.append(rw.radii)
        curv.append(gauss_kronecker(rw.radii))
        supp.append(rw.H)
    return CurvatureReport(directions, np.array(radii), np.array(curv), np.array(supp), float(p))


def lindquist_1(f, u, x, level=DEFAULT_LEVEL):
    """``int_{S^{n-1} ∩ u^⊥} <xi, x>^2 f(xi) dxi`` for ``x ⊥ u``."""
    u = _unit(u)
    x = np.asarray(x, dtype=float)
    if abs(np.dot(u, x)) > ORTHO_TOL * max(1.0, np.linalg.norm(x)):
        raise ValueError("lindquist_1 needs x orthogonal to u")
    rule = build_subsphere_rule(u, level)
    return float(np.sum(rule.weights * (rule.nodes @ x) ** 2 * f(rule.nodes)))


def lindquist_p(f, p, u, x, level=DEFAULT_LEVEL):
    """``int |<u, xi>|^(p-2) <x, xi>^2 f(xi) dxi``; its sign decides convexity at ``(u, x)``."""
    p = float(p)
    if not p > 1.0:
        raise ValueError(f"lindquist_p needs p > 1 (got p={p}); use lindquist_1")
    u = _unit(u)
    x = np.asarray(x, dtype=float)
    return float(axis_integral(f, u, p - 2.0, lambda X: (X @ x) ** 2, level=level))


def lindquist_form(f, p, u, basis, level=DEFAULT_LEVEL):
    """Matrix of the quadratic form ``x -> lindquist(u, x)`` on the span of ``basis`` rows,
    recovered by polarization from criterion values only."""
    crit = (lambda x: lindquist_1(f, u, x, level)) if p == 1 else (lambda x: lindquist_p(f, p, u, x, level))
    basis = np.asarray(basis, dtype=float)
    k = len(basis)
    M = np.empty((k, k))
    for i in range(k):
        M[i, i] = crit(basis[i])
        for j in range(i + 1, k):
            M[i, j] = M[j, i] = 0.25 * (crit(basis[i] + basis[j]) - crit(basis[i] - basis[j]))
    return M


@dataclass
class ConvexityReport:
    p: float
    directions: np.ndarray
    lindquist_min: np.ndarray  # min of the criterion over unit x (full space for p > 1)
    tangent_min: np.ndarray  # min over unit x in u^⊥
    hessian_min: np.ndarray  # oracle: smallest eigenvalue of hessian_Hp / (p(p-1)) on the same space
    verdict: bool

    @property
    def max_discrepancy(self):
        return float(np.max(np.abs(self.lindquist_min - self.hessian_min)))

    def to_dict(self):
        return {
            "p": self.p,
            "directions": self.directions.tolist(),
            "lindquist_min": self.lindquist_min.tolist(),
            "tangent_min": self.tangent_min.tolist(),
            "hessian_min": self.hessian_min.tolist(),
            "max_discrepancy": self.max_discrepancy,
            "verdict": self.verdict,
        }


def convexity_check(f, p, directions, level=DEFAULT_LEVEL):
    """Convexity of ``H = T_p f`` from the (p-)Lindquist criterion.

    For each ``u`` the criterion's quadratic form is diagonalized and the
    criterion re-evaluated at its eigen-directions; the minimum must be
    ``>= -1e-9``. For ``p > 1`` all ``x`` in R^n are tested, for ``p = 1``
    only ``x ⊥ u``. The smallest eigenvalue of ``hessian_Hp / (p(p-1))``
    (or ``hessian_H_p1 / 2``) is recorded alongside as a cross-check.
    """
    p = float(p)
    directions = np.atleast_2d(np.asarray(directions, dtype=float))
    n = f.dim
    lmin, tmin, hmin = [], [], []
    for u in directions:
        u = _unit(u)
        Q = householder_basis(u)
        B = Q[:, :-1]
        if p == 1.0:
            space = B.T
            oracle = B.T @ hessian_H_p1(f, u, level) @ B / 2.0
        else:
            space = np.eye(n)
            oracle = hessian_Hp(f, p, u, level) / (p * (p - 1.0))
        crit = (lambda x: lindquist_1(f, u, x, level)) if p == 1.0 else (lambda x: lindquist_p(f, p, u, x, level))
        M = lindquist_form(f, p, u, space, level)
        _, V = jacobi_eigh(M)
        dirs = (space.T @ V).T
        lmin.append(min(crit(d / np.linalg.norm(d)) for d in dirs))
        Mt = lindquist_form(f, p, u, B.T, level) if p != 1.0 else M
        _, Vt = jacobi_eigh(Mt)
        tmin.append(min(crit(d / np.linalg.norm(d)) for d in (B @ Vt).T))
        hmin.append(jacobi_eigh(oracle)[0][0])
    lmin = np.array(lmin)
    return ConvexityReport(p, directions, lmin, np.array(tmin), np.array(hmin), bool(np.all(lmin >= CONVEX_TOL)))


def boundary_point(f, p, u, level=DEFAULT_LEVEL):
    """``grad H(u)``: the boundary point of the body with outer normal ``u``."""
    u = _unit(u)
    p = float(p)
    hp = lp_cosine(f, TransformSpec(p, f.dim, level), u)
    if not hp > 0.0:
        raise DomainError(f"H(u) = 0 at u={u.tolist()}")
    return grad_Hp(f, p, u, level) / (p * hp ** ((p - 1.0) / p))
