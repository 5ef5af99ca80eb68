"""Closed-form partial derivatives of ``H^p = T_p f`` and of its p-th
root, plus an independent finite-difference engine used to check them.
"""

from dataclasses import dataclass
import itertools

import numpy as np

from .errors import DomainError
from .specfun import c_const, is_even_integer
from .squad import build_subsphere_rule
from .transforms import DEFAULT_LEVEL, TransformSpec, axis_integral, lp_cosine

EPS = np.finfo(float).eps


@dataclass(frozen=True)
class MultiIndex:
    """Exponent vector selecting ``D^alpha = prod (d/dx_k)^alpha_k``."""

    entries: tuple

    def __post_init__(self):
        entries = tuple(int(a) for a in self.entries)
        if any(a < 0 for a in entries):
            raise ValueError(f"multi-index entries must be nonnegative: {entries}")
        object.__setattr__(self, "entries", entries)

    @property
    def order(self):
        return sum(self.entries)

    def __len__(self):
        return len(self.entries)

    def monomial(self, X):
        return np.prod(X ** np.asarray(self.entries), axis=1)

    @classmethod
    def unit(cls, n, *axes):
        e = [0] * n
        for a in axes:
            e[a] += 1
        return cls(tuple(e))


def as_multi_index(alpha, n=None):
    mi = alpha if isinstance(alpha, MultiIndex) else MultiIndex(tuple(alpha))
    if n is not None and len(mi) != n:
        raise ValueError(f"multi-index {mi.entries} has length {len(mi)}, expected {n}")
    return mi


def _nonzero(x):
    x = np.asarray(x, dtype=float)
    nrm = float(np.linalg.norm(x))
    if nrm == 0.0:
        raise ValueError("derivatives are only defined away from the origin")
    return x, nrm


def analytic_deriv_odd(f, k, alpha, x, level=DEFAULT_LEVEL):
    """``D^alpha H^p(x)`` for ``p = 2k+1`` and ``|alpha| = 2k+2``.

    Equals ``C_{2k+1} (-1)^(k+1) / |x|`` times the integral of
    ``xi^alpha f(xi)`` over the great subsphere ``S^{n-1} ∩ x^⊥``.
    """
    k = int(k)
    if k < 0:
        raise ValueError("k must be a nonnegative integer")
    x, nrm = _nonzero(x)
    alpha = as_multi_index(alpha, f.dim)
    if alpha.order != 2 * k + 2:
        raise ValueError(f"|alpha| = {alpha.order} but the odd-exponent formula needs |alpha| = 2k+2 = {2 * k + 2}")
    if f.kind == "atoms":
        raise DomainError("the subsphere formula needs a density, not atoms")
    rule = build_subsphere_rule(x, level)
    integral = float(np.sum(rule.weights * alpha.monomial(rule.nodes) * f(rule.nodes)))
    return c_const(2 * k + 1) * (-1) ** (k + 1) / nrm * integral


def _check_frac(p, order):
    if not p > 1.0:
        raise ValueError(f"the fractional formula needs p > 1 (got p={p})")
    if is_even_integer(p):
        raise ValueError(f"p={p} is an even integer; the formula needs p not an even integer")
    if order % 2:
        raise ValueError(f"|alpha| = {order} is odd; only even orders have a closed form")
    if order == 0:
        raise ValueError("|alpha| = 0 is the transform itself, not a derivative")
    if abs(order - (p + 1.0)) < 1e-12:
        raise ValueError(f"|alpha| = p+1 = {order}; use analytic_deriv_odd with k = {(order - 2) // 2}")
    if not order < p + 1.0:
        raise ValueError(f"|alpha| = {order} must be smaller than p+1 = {p + 1}")


def analytic_deriv_frac(f, p, alpha, x, level=DEFAULT_LEVEL):
    """``D^alpha H^p(x)`` for even ``|alpha| < p+1``, ``p > 1`` not an even integer.

    ``(-1)^(|alpha|/2) (C_p / C_{p-|alpha|}) int |<x,xi>|^(p-|alpha|) xi^alpha f(xi) dxi``.
    The axis-weighted rule absorbs the singular weight when ``p < |alpha|``.
    """
    p = float(p)
    x, nrm = _nonzero(x)
    alpha = as_multi_index(alpha, f.dim)
    m = alpha.order
    _check_frac(p, m)
    q = p - m
    coef = (-1) ** (m // 2) * c_const(p) / c_const(q)
    return coef * nrm ** q * axis_integral(f, x, q, alpha.monomial, level=level)


def grad_Hp(f, p, u, level=DEFAULT_LEVEL):
    """Gradient of ``H^p``: ``p int |<u,xi>|^(p-1) sgn<u,xi> xi f(xi) dxi``."""
    p = float(p)
    if not p >= 1.0:
        raise ValueError(f"gradient formula needs p >= 1 (got p={p})")
    u, nrm = _nonzero(u)
    uh = u / nrm
    g = lambda X: np.sign(X @ uh)[:, None] * X
    return p * nrm ** (p - 1.0) * axis_integral(f, u, p - 1.0, g, level=level)


def _outer(X):
    return X[:, :, None] * X[:, None, :]


def hessian_Hp(f, p, u, level=DEFAULT_LEVEL):
    """Hessian of ``H^p``: entries ``p(p-1) int |<u,xi>|^(p-2) xi_i xi_j f(xi) dxi``.

    One quadrature for the whole matrix; symmetric by construction.
    """
    p = float(p)
    if not p > 1.0:
        raise ValueError(f"hessian_Hp needs p > 1 (got p={p}); use hessian_H_p1 for p = 1")
    u, nrm = _nonzero(u)
    M = p * (p - 1.0) * nrm ** (p - 2.0) * axis_integral(f, u, p - 2.0, _outer, level=level)
    return 0.5 * (M + M.T)


def hessian_H_p1(f, u, level=DEFAULT_LEVEL):
    """Hessian of the cosine transform ``H = Tf`` at ``u``:
    ``2/|u| int_{S^{n-1} ∩ u^⊥} xi xi^T f(xi) dxi``."""
    u, nrm = _nonzero(u)
    if f.kind == "atoms":
        raise DomainError("the subsphere formula needs a density, not atoms")
    rule = build_subsphere_rule(u, level)
    w = rule.weights * f(rule.nodes)
    M = 2.0 / nrm * np.einsum("k,ki,kj->ij", w, rule.nodes, rule.nodes)
    return 0.5 * (M + M.T)


def hessian_H(f, p, u, level=DEFAULT_LEVEL):
    """Hessian of ``H = (H^p)^(1/p)`` from the gradient and Hessian of ``H^p``."""
    p = float(p)
    if p == 1.0:
        return hessian_H_p1(f, u, level)
    u, _ = _nonzero(u)
    hp = lp_cosine(f, TransformSpec(p, f.dim, level), u)
    if not hp > 0.0:
        raise DomainError(f"H^p(u) = {hp:.3e}; the root Hessian needs H^p > 0")
    g = grad_Hp(f, p, u, level)
    Hpp = hessian_Hp(f, p, u, level)
    M = (Hpp - (p - 1.0) / p / hp * np.outer(g, g)) / (p * hp ** ((p - 1.0) / p))
    return 0.5 * (M + M.T)


@dataclass
class HessianReport:
    point: np.ndarray
    hessian_Hp: np.ndarray
    grad_Hp: np.ndarray
    hessian_H: np.ndarray
    method: str  # "analytic" or "finite-difference"
    Hp: float

    def euler_residual(self, p):
        """Relative defect of ``<u, grad H^p(u)> = p H^p(u)``."""
        lhs = float(np.dot(self.point, self.grad_Hp))
        return abs(lhs - p * self.Hp) / max(abs(p * self.Hp), 1e-300)

    def to_dict(self):
        return {
            "point": self.point.tolist(),
            "Hp": self.Hp,
            "grad_Hp": self.grad_Hp.tolist(),
            "hessian_Hp": self.hessian_Hp.tolist(),
            "hessian_H": self.hessian_H.tolist(),
            "method": self.method,
        }


def hessian_report(f, p, u, method="analytic", level=DEFAULT_LEVEL, h=None):
    """Gradient and Hessians of ``H^p`` and ``H`` at ``u``, analytically or by differences."""
    u, _ = _nonzero(u)
    n = f.dim
    spec = TransformSpec(p, n, level)
    hp = lp_cosine(f, spec, u)
    if method == "analytic":
        g = grad_Hp(f, p, u, level)
        Hpp = hessian_Hp(f, p, u, level) if p > 1 else None
        HH = hessian_H(f, p, u, level)
        if Hpp is None:
            Hpp = HH
    elif method == "finite-difference":
        fn = lambda y: lp_cosine(f, spec, y)
        g = np.array([finite_diff(fn, MultiIndex.unit(n, i), u, h) for i in range(n)])
        Hpp = _fd_hessian(fn, u, h)
        root = lambda y: max(lp_cosine(f, spec, y), 0.0) ** (1.0 / p)
        HH = _fd_hessian(root, u, h)
    else:
        raise ValueError(f"unknown method {method!r}")
    return HessianReport(u, Hpp, g, HH, method, hp)


def _fd_hessian(fn, x, h=None):
    n = len(x)
    M = np.empty((n, n))
    for i in range(n):
        for j in range(i, n):
            M[i, j] = M[j, i] = finite_diff(fn, MultiIndex.unit(n, i, j), x, h)
    return M


# central-difference stencils (offsets, coefficients), all O(h^2)
_STENCILS = {
    0: ((0,), (1.0,)),
    1: ((-1, 1), (-0.5, 0.5)),
    2: ((-1, 0, 1), (1.0, -2.0, 1.0)),
    3: ((-2, -1, 1, 2), (-0.5, 1.0, -1.0, 0.5)),
    4: ((-2, -1, 0, 1, 2), (1.0, -4.0, 6.0, -4.0, 1.0)),
}


def default_step(order, x):
    # Richardson leaves an O(h^4) error, so balance h^4 against eps / h^order
    return EPS ** (1.0 / (order + 4)) * max(1.0, float(np.linalg.norm(x)))


def _central(fn, alpha, x, h):
    stencils = [_STENCILS[a] for a in alpha]
    total = 0.0
    for combo in itertools.product(*(range(len(s[0])) for s in stencils)):
        coef = 1.0
        shift = np.zeros_like(x)
        for axis, idx in enumerate(combo):
            off, c = stencils[axis][0][idx], stencils[axis][1][idx]
            coef *= c
            shift[axis] = off * h
        total += coef * fn(x + shift)
    return total / h ** sum(alpha)


def finite_diff(fn, alpha, x, h=None):
    """Central-difference estimate of ``D^alpha fn(x)`` with one Richardson step.

    ``(4 D(h/2) - D(h)) / 3`` cancels the ``h^2`` error term. Orders up to
    ``|alpha| = 4``.
    """
    x = np.asarray(x, dtype=float)
    alpha = as_multi_index(alpha, x.size).entries
    order = sum(alpha)
    if order > 4:
        raise ValueError(f"finite differences are limited to |alpha| <= 4 (got {order})")
    if any(a > 4 for a in alpha):
        raise ValueError("per-axis order above 4 is not supported")
    if h is None:
        h = default_step(order, x)
    h = float(h)
    if not h > 0.0 or np.all(x + 0.25 * h == x):
        raise ValueError(f"finite-difference step underflow (h={h!r})")
    if order == 0:
        return float(fn(x))
    coarse = _central(fn, alpha, x, h)
    fine = _central(fn, alpha, x, 0.5 * h)
    return (4.0 * fine - coarse) / 3.0
