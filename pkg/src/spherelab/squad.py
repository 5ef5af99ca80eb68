"""Quadrature rules on the unit sphere S^{n-1}, on great subspheres
S^{n-1} ∩ x^⊥, and axis-adapted rules carrying the weight |<u, xi>|^q.

All rules are antipodally symmetric and their node order is fixed by
construction, so sums are reproducible bit for bit.
"""

from dataclasses import dataclass
from functools import lru_cache
import math

import numpy as np
from scipy.special import roots_jacobi

# beyond this dimension product rules get too large
MAX_PRODUCT_DIM = 6
QUASI_RANDOM_NODES = 4096


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes (unit vectors, one per row) and positive weights.

    ``degree`` is the largest total polynomial degree integrated exactly;
    for axis-weighted rules it refers to the smooth factor only.
    """

    dim: int
    nodes: np.ndarray
    weights: np.ndarray
    degree: int

    def __post_init__(self):
        self.nodes.setflags(write=False)
        self.weights.setflags(write=False)

    def __len__(self):
        return len(self.weights)

    @property
    def measure(self):
        return float(np.sum(self.weights))


def sphere_measure(n):
    """Surface measure of S^{n-1} (counting measure 2 for S^0)."""
    return 2.0 * math.pi ** (n / 2.0) / math.gamma(n / 2.0)


def householder_basis(x):
    """Orthonormal matrix whose last column is ``x/|x|``.

    The first ``n-1`` columns span ``x^⊥``. Built from the reflection
    ``I - 2 v v^T / v^T v`` with ``v = x_hat + sign(x_n) e_n`` so no
    cancellation occurs.
    """
    x = np.asarray(x, dtype=float)
    nrm = np.linalg.norm(x)
    if nrm == 0.0 or not np.isfinite(nrm):
        raise ValueError("householder_basis needs a nonzero finite vector")
    xh = x / nrm
    n = xh.size
    sign = 1.0 if xh[-1] >= 0.0 else -1.0
    v = xh.copy()
    v[-1] += sign
    Q = np.eye(n) - 2.0 * np.outer(v, v) / np.dot(v, v)
    # Q e_n = -sign * xh
    Q[:, -1] = xh
    return Q


def _sym_order(nodes, weights):
    return np.ascontiguousarray(nodes), np.ascontiguousarray(weights)


@lru_cache(maxsize=None)
def _circle(level):
    k = np.arange(2 * level)
    theta = math.pi * k / level
    nodes = np.column_stack([np.cos(theta), np.sin(theta)])
    weights = np.full(2 * level, math.pi / level)
    return nodes, weights


@lru_cache(maxsize=None)
def _jacobi_half(m, alpha, beta):
    """Nodes and weights on [-1, 1] for weight (1-x)^alpha (1+x)^beta."""
    x, w = roots_jacobi(m, alpha, beta)
    return x, w


@lru_cache(maxsize=None)
def _sphere_cached(n, level):
    if n == 1:
        return np.array([[1.0], [-1.0]]), np.array([1.0, 1.0]), 10**9
    if n == 2:
        nodes, weights = _circle(level)
        return nodes, weights, 2 * level - 1
    if n > MAX_PRODUCT_DIM:
        return _quasi_random(n)
    # polar coordinate t = xi_n with density (1 - t^2)^((n-3)/2) times an S^{n-2} rule
    a = (n - 3) / 2.0
    t, wt = _jacobi_half(level, a, a)
    inner, winner, _ = _sphere_cached(n - 1, level)
    s = np.sqrt(1.0 - t * t)
    nodes = np.empty((level * len(winner), n))
    nodes[:, :-1] = (s[:, None, None] * inner[None, :, :]).reshape(-1, n - 1)
    nodes[:, -1] = np.repeat(t, len(winner))
    weights = np.outer(wt, winner).ravel()
    return nodes, weights, 2 * level - 1


def _quasi_random(n):
    # Halton-free fallback: Gaussian samples from a fixed seed, antipodally paired,
    # equal weights. Exact only for constants and odd monomials.
    rng = np.random.default_rng(12345 + n)
    half = rng.standard_normal((QUASI_RANDOM_NODES // 2, n))
    half /= np.linalg.norm(half, axis=1, keepdims=True)
    nodes = np.vstack([half, -half])
    weights = np.full(len(nodes), sphere_measure(n) / len(nodes))
    return nodes, weights, 1


def build_sphere_rule(n, level):
    """Product quadrature rule on S^{n-1}.

    ``n = 2``: ``2*level`` equally spaced angles. ``n = 3``: Gauss-Legendre
    in ``xi_3`` times ``2*level`` angles. ``3 < n <= 6``: Gauss-Jacobi in
    ``xi_n`` times the rule on S^{n-2}, recursively. All of these are exact
    to degree ``2*level - 1``. For ``n > 6`` a seeded quasi-random rule with
    equal weights is returned (degree 1).
    """
    n, level = int(n), int(level)
    if n < 2:
        raise ValueError(f"dimension must be >= 2 (got {n})")
    if level < 1:
        raise ValueError(f"level must be >= 1 (got {level})")
    nodes, weights, degree = _sphere_cached(n, level)
    return QuadratureRule(n, nodes.copy(), weights.copy(), degree)


def build_subsphere_rule(x, level):
    """Rule on the great subsphere S^{n-1} ∩ x^⊥.

    For ``n = 2`` the carrier is the antipodal pair orthogonal to ``x``,
    each point with weight 1. Only the direction of ``x`` matters.
    """
    x = np.asarray(x, dtype=float)
    n = x.size
    if n < 2:
        raise ValueError(f"dimension must be >= 2 (got {n})")
    if not np.any(x):
        raise ValueError("subsphere rule needs a nonzero vector")
    B = householder_basis(x)[:, :-1]
    if n == 2:
        inner, winner, degree = _sphere_cached(1, level)
    else:
        inner, winner, degree = _sphere_cached(n - 1, int(level))
    nodes = inner @ B.T
    return QuadratureRule(n, nodes, winner.copy(), degree)


EVEN_DIM_EXTRA = 12


@lru_cache(maxsize=None)
def _axis_t_rule(level, q, a):
    """Nodes t in (0, 1) and weights for int_0^1 t^q (1 - t^2)^a G(t) dt."""
    x, w = _jacobi_half(level, a, q)
    t = 0.5 * (1.0 + x)
    wt = 2.0 ** (-q - a - 1.0) * w * (1.0 + t) ** a
    return t, wt


def build_weighted_axis_rule(u, q, level):
    """Rule for ``int |<u, xi>|^q g(xi) dxi`` over S^{n-1}, with ``q > -1``.

    Coordinates are ``t = <u_hat, xi>`` and ``omega`` on S^{n-2} ⊂ u^⊥, so
    ``xi = t u_hat + sqrt(1 - t^2) omega``. The singular factor ``|t|^q``
    and the Jacobian ``(1 - t^2)^((n-3)/2)`` are absorbed into the weights
    by a Gauss-Jacobi rule on each half ``t > 0`` and ``t < 0`` (for even
    ``n`` with ``EVEN_DIM_EXTRA`` more nodes, see ``_axis_t_rule``); summing
    ``w_i g(xi_i)`` then approximates the weighted integral. Nodes with
    ``t > 0`` come first, then their mirror images.
    """
    q = float(q)
    if not q > -1.0:
        raise ValueError(f"axis weight exponent must exceed -1 (got q={q})")
    u = np.asarray(u, dtype=float)
    n = u.size
    if n < 2:
        raise ValueError(f"dimension must be >= 2 (got {n})")
    level = int(level)
    if level < 1:
        raise ValueError(f"level must be >= 1 (got {level})")
    Q = householder_basis(u)
    uh, B = Q[:, -1], Q[:, :-1]
    a = (n - 3) / 2.0
    # for even n the factor (1 + t)^a is not polynomial; extra nodes resolve it
    # to roundoff so the declared degree still holds
    t, wt = _axis_t_rule(level + (EVEN_DIM_EXTRA if n % 2 == 0 else 0), q, a)
    inner, winner, degree = _sphere_cached(max(n - 1, 1), level)
    omega = inner @ B.T  # (m, n)
    s = np.sqrt(1.0 - t * t)
    half = t[:, None, None] * uh[None, None, :] + s[:, None, None] * omega[None, :, :]
    half = half.reshape(-1, n)
    whalf = np.outer(wt, winner).ravel()
    nodes = np.vstack([half, -half])
    weights = np.concatenate([whalf, whalf])
    return QuadratureRule(n, nodes, weights, min(degree, 2 * level - 1))


def integrate(rule, g):
    """``sum_i w_i g(xi_i)``.

    ``g`` maps an ``(N, n)`` array of nodes to ``(N,)`` or ``(N, k)``
    values. The reduction is numpy's pairwise summation over the fixed
    node order.
    """
    vals = np.asarray(g(rule.nodes), dtype=float)
    if vals.ndim == 1:
        return float(np.sum(rule.weights * vals))
    return np.sum(rule.weights[:, None] * vals.reshape(len(rule), -1), axis=0).reshape(vals.shape[1:])
