"""Densities on S^{n-1} and the transforms acting on them: the
L^p-cosine transform, the spherical Radon transform and zonotope
support functions.
"""

from dataclasses import dataclass, field
import json
import math

import numpy as np
from scipy import integrate as sp_integrate

from .errors import DomainError
from .specfun import is_even_integer, real_sph_harm
from .squad import (
    build_sphere_rule,
    build_subsphere_rule,
    build_weighted_axis_rule,
    integrate,
)

DEFAULT_LEVEL = 32
KINDS = ("preset", "grid", "atoms")


# ---------------------------------------------------------------- presets

def _constant(dim, value=1.0):
    value = float(value)
    return lambda X: np.full(len(X), value)


def _monomial(dim, alpha, offset=0.0, scale=1.0):
    alpha = np.asarray(alpha, dtype=int)
    if alpha.size != dim or np.any(alpha < 0):
        raise ValueError(f"monomial exponents {alpha.tolist()} do not fit dimension {dim}")
    return lambda X: offset + scale * np.prod(X ** alpha, axis=1)


def _quadratic(dim, matrix, offset=0.0):
    A = np.asarray(matrix, dtype=float)
    if A.shape != (dim, dim):
        raise ValueError(f"quadratic preset needs a {dim}x{dim} matrix")
    A = 0.5 * (A + A.T)
    return lambda X: offset + np.einsum("ij,jk,ik->i", X, A, X)


def _zonal(dim, axis, eps=0.5, power=2):
    a = np.asarray(axis, dtype=float)
    a = a / np.linalg.norm(a)
    return lambda X: 1.0 + eps * (X @ a) ** int(power)


def _harmonic(dim, coeffs, offset=0.0):
    if dim != 3:
        raise ValueError("harmonic preset is only defined for dim=3")
    terms = [(int(l), int(m), float(c)) for l, m, c in coeffs]

    def f(X):
        out = np.full(len(X), float(offset))
        for l, m, c in terms:
            out += c * real_sph_harm(l, m, X)
        return out

    return f


def _bump(dim, eps=0.3, m=1):
    if dim != 2:
        raise ValueError("bump preset is only defined for dim=2")
    return lambda X: 1.0 + eps * np.cos(2 * m * np.arctan2(X[:, 1], X[:, 0]))


def _vanishing(dim, point, c=0.5):
    # 1 at +-point; the default c = 0.5 gives |<xi, point>|, which vanishes on
    # point^perp, so the p = 1 body has a zero radius at normal +-point
    x0 = np.asarray(point, dtype=float)
    x0 = x0 / np.linalg.norm(x0)

    def f(X):
        # squared chordal distance to the nearer of +-x0
        d2 = 2.0 - 2.0 * np.abs(X @ x0)
        return np.maximum(0.0, 1.0 - c * d2)

    return f


def _cap(dim, center, radius, inside=1.0, outside=0.0):
    c0 = np.asarray(center, dtype=float)
    c0 = c0 / np.linalg.norm(c0)
    cosr = math.cos(float(radius))
    return lambda X: np.where(np.abs(X @ c0) >= cosr, float(inside), float(outside))


def _watson_norm(dim, kappa):
    # int_{S^{n-1}} exp(kappa (t^2 - 1)) dxi
    from .squad import sphere_measure

    a = (dim - 3) / 2.0
    val, _ = sp_integrate.quad(
        lambda t: math.exp(kappa * (t * t - 1.0)) * (1.0 - t * t) ** a,
        0.0, 1.0, limit=200, points=[max(0.0, 1.0 - 10.0 / max(kappa, 1e-9))],
    )
    return 2.0 * val * (sphere_measure(dim - 1) if dim > 2 else 2.0)


def _concentrated(dim, atoms, kappa=100.0):
    us = np.array([np.asarray(u, dtype=float) / np.linalg.norm(u) for u, _ in atoms])
    lam = np.array([float(w) for _, w in atoms])
    z = _watson_norm(dim, float(kappa))

    def f(X):
        t = X @ us.T
        return (np.exp(kappa * (t * t - 1.0)) / z) @ lam

    return f


PRESETS = {
    "constant": _constant,
    "monomial": _monomial,
    "quadratic": _quadratic,
    "zonal": _zonal,
    "harmonic": _harmonic,
    "bump": _bump,
    "vanishing": _vanishing,
    "cap": _cap,
    "concentrated": _concentrated,
}


# --------------------------------------------------------------- densities

@dataclass(frozen=True, eq=False)
class SphericalDensity:
    """An even function or atomic measure on S^{n-1}.

    ``kind`` is ``"preset"`` (named closed form, see ``PRESETS``),
    ``"grid"`` (samples aligned to the nodes of ``build_sphere_rule(dim,
    level)``) or ``"atoms"`` (pairs ``(u_i, lambda_i)`` meaning the measure
    ``sum lambda_i (delta_{u_i} + delta_{-u_i}) / 2``).

    A preset may carry ``params["rotation"] = U``, in which case the density
    is ``xi -> f(U xi)``.
    """

    dim: int
    kind: str
    name: str = None
    params: dict = field(default_factory=dict)
    values: np.ndarray = None
    level: int = None
    atoms: tuple = ()
    evenized: bool = True

    def __post_init__(self):
        if self.dim < 2:
            raise ValueError(f"dimension must be >= 2 (got {self.dim})")
        if self.kind not in KINDS:
            raise ValueError(f"unknown density kind {self.kind!r}")
        if self.kind == "preset":
            if self.name not in PRESETS:
                raise ValueError(f"unknown preset {self.name!r}; known: {sorted(PRESETS)}")
            params = {k: v for k, v in self.params.items() if k != "rotation"}
            base = PRESETS[self.name](self.dim, **params)
            rot = self.params.get("rotation")
            if rot is not None:
                U = np.asarray(rot, dtype=float)
                if U.shape != (self.dim, self.dim):
                    raise ValueError("rotation must be a dim x dim matrix")
                base = _compose(base, U)
            object.__setattr__(self, "_fn", base)
        elif self.kind == "grid":
            rule = build_sphere_rule(self.dim, self.level)
            vals = np.asarray(self.values, dtype=float)
            if vals.shape != (len(rule),):
                raise ValueError(f"grid needs {len(rule)} samples for level {self.level}")
            object.__setattr__(self, "values", vals)
            object.__setattr__(self, "_rule", rule)
        else:
            atoms = []
            for u, lam in self.atoms:
                u = np.asarray(u, dtype=float)
                if u.size != self.dim:
                    raise ValueError("atom direction has wrong dimension")
                if not lam > 0:
                    raise ValueError("atom weights must be positive")
                atoms.append((u / np.linalg.norm(u), float(lam)))
            object.__setattr__(self, "atoms", tuple(atoms))

    # constructors
    @classmethod
    def preset(cls, name, dim, evenized=True, **params):
        return cls(dim=dim, kind="preset", name=name, params=params, evenized=evenized)

    @classmethod
    def from_atoms(cls, atoms, dim=None):
        atoms = list(atoms)
        dim = dim if dim is not None else len(atoms[0][0])
        return cls(dim=dim, kind="atoms", atoms=tuple(atoms))

    @classmethod
    def from_grid(cls, dim, level, values):
        return cls(dim=dim, kind="grid", level=int(level), values=values)

    @classmethod
    def sample(cls, density, level):
        """Grid density holding ``density`` evaluated on a sphere rule."""
        rule = build_sphere_rule(density.dim, level)
        return cls.from_grid(density.dim, level, density(rule.nodes))

    @property
    def rule(self):
        if self.kind != "grid":
            raise AttributeError("only grid densities carry a rule")
        return self._rule

    def __call__(self, X):
        """Evaluate at unit vectors ``X`` of shape ``(N, n)`` or ``(n,)``."""
        if self.kind == "atoms":
            raise DomainError("an atomic measure has no pointwise values")
        X = np.asarray(X, dtype=float)
        single = X.ndim == 1
        X = np.atleast_2d(X)
        if X.shape[1] != self.dim:
            raise ValueError(f"expected points in R^{self.dim}, got shape {X.shape}")
        raw = self._raw
        out = 0.5 * (raw(X) + raw(-X)) if self.evenized else raw(X)
        return out[0] if single else out

    def _raw(self, X):
        if self.kind == "preset":
            return self._fn(X)
        # nearest-node lookup; test use only
        idx = np.argmax(X @ self._rule.nodes.T, axis=1)
        return self.values[idx]

    def even_part(self):
        return _replace(self, evenized=True)

    def rotated(self, U):
        """The density ``xi -> f(U xi)``."""
        U = np.asarray(U, dtype=float)
        if self.kind == "atoms":
            return SphericalDensity.from_atoms([(U.T @ u, lam) for u, lam in self.atoms], self.dim)
        if self.kind == "grid":
            raise ValueError("grid densities cannot be rotated")
        params = dict(self.params)
        prev = params.get("rotation")
        params["rotation"] = (np.asarray(prev) @ U if prev is not None else U).tolist()
        return _replace(self, params=params)

    def __eq__(self, other):
        # value equality through the serialized form; arrays make the
        # generated dataclass comparison ambiguous
        if not isinstance(other, SphericalDensity):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    __hash__ = None

    # JSON
    def to_dict(self):
        d = {"dim": self.dim, "kind": self.kind}
        if self.kind == "preset":
            d["name"] = self.name
            d["params"] = _jsonable(self.params)
            d["evenized"] = self.evenized
        elif self.kind == "grid":
            d["level"] = self.level
            d["values"] = self.values.tolist()
        else:
            d["atoms"] = [[u.tolist(), lam] for u, lam in self.atoms]
        return d

    @classmethod
    def from_dict(cls, d):
        kind = d.get("kind")
        dim = int(d["dim"])
        if kind == "preset":
            return cls(dim=dim, kind="preset", name=d["name"], params=dict(d.get("params", {})),
                       evenized=bool(d.get("evenized", True)))
        if kind == "grid":
            return cls.from_grid(dim, int(d["level"]), d["values"])
        if kind == "atoms":
            return cls.from_atoms([(u, lam) for u, lam in d["atoms"]], dim)
        raise ValueError(f"unknown density kind {kind!r}")

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def _compose(fn, U):
    return lambda X: fn(X @ U.T)


def _replace(d, **changes):
    kw = dict(dim=d.dim, kind=d.kind, name=d.name, params=d.params, values=d.values,
              level=d.level, atoms=d.atoms, evenized=d.evenized)
    kw.update(changes)
    return SphericalDensity(**kw)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.generic):
        return obj.item()
    return obj


@dataclass(frozen=True)
class TransformSpec:
    p: float
    dim: int
    level: int = DEFAULT_LEVEL

    def __post_init__(self):
        if not self.p >= 1.0:
            raise ValueError(f"the L^p-cosine transform needs p >= 1 (got p={self.p})")
        if self.dim < 2:
            raise ValueError(f"dimension must be >= 2 (got {self.dim})")
        if self.level < 1:
            raise ValueError(f"level must be >= 1 (got {self.level})")

    @property
    def even_integer(self):
        """True when p is an even integer: the representing measure is then not unique."""
        return is_even_integer(self.p)


# ------------------------------------------------------------- integrals

def _check_point(f, x):
    x = np.asarray(x, dtype=float)
    if x.shape != (f.dim,):
        raise ValueError(f"dimension mismatch: density lives on S^{f.dim - 1}, point has shape {x.shape}")
    return x


def axis_integral(f, u, q, g=None, level=DEFAULT_LEVEL):
    """``int |<u_hat, xi>|^q g(xi) f(xi) dxi`` over S^{n-1}.

    ``g`` maps ``(N, n)`` nodes to ``(N,)`` or ``(N, ...)`` values; it
    defaults to 1. Presets use ``build_weighted_axis_rule`` around ``u``;
    grid densities use their own rule; atoms are summed exactly.
    """
    u = _check_point(f, u)
    nrm = np.linalg.norm(u)
    if nrm == 0.0:
        raise ValueError("axis direction must be nonzero")
    uh = u / nrm
    if f.kind == "preset":
        rule = build_weighted_axis_rule(uh, q, level)
        nodes, w = rule.nodes, rule.weights * f(rule.nodes)
    elif f.kind == "grid":
        nodes = f.rule.nodes
        t = np.abs(nodes @ uh)
        if q < 0 and np.any(t == 0.0):
            raise DomainError("singular axis weight hits a grid node")
        w = f.rule.weights * (t ** q if q != 0 else 1.0) * f(nodes)
    else:
        dirs = np.array([a for a, _ in f.atoms])
        lam = np.array([l for _, l in f.atoms])
        nodes = np.vstack([dirs, -dirs])
        t = np.abs(nodes @ uh)
        if q < 0 and np.any(t == 0.0):
            raise DomainError("singular axis weight hits an atom")
        w = np.concatenate([lam, lam]) * 0.5 * (t ** q if q != 0 else 1.0)
    if g is None:
        return float(np.sum(w))
    vals = np.asarray(g(nodes), dtype=float)
    if vals.ndim == 1:
        return float(np.sum(w * vals))
    flat = vals.reshape(len(w), -1)
    return np.sum(w[:, None] * flat, axis=0).reshape(vals.shape[1:])


def lp_cosine(f, spec, x):
    """``H^p(x) = int |<x, xi>|^p f(xi) dxi``; exact finite sum for atoms."""
    x = _check_point(f, x)
    if f.dim != spec.dim:
        raise ValueError(f"dimension mismatch: density dim {f.dim}, spec dim {spec.dim}")
    nrm = np.linalg.norm(x)
    if nrm == 0.0:
        return 0.0
    return nrm ** spec.p * axis_integral(f, x, spec.p, level=spec.level)


def cosine(f, x, level=DEFAULT_LEVEL):
    """The cosine transform ``Tf(x)`` (the ``p = 1`` case)."""
    return lp_cosine(f, TransformSpec(1.0, f.dim, level), x)


def radon(f, x, level=DEFAULT_LEVEL):
    """Spherical Radon transform ``Rf(x) = int_{S^{n-1} ∩ x^⊥} f``."""
    if f.kind == "atoms":
        raise DomainError("the Radon transform of an atomic measure is not a function")
    x = _check_point(f, x)
    rule = build_subsphere_rule(x, level)
    return integrate(rule, f)


def zonotope_support(atoms, x):
    """Support function ``sum lambda_i |<u_i, x>|`` of the zonotope
    ``sum lambda_i [-u_i, u_i]``."""
    if atoms.kind != "atoms":
        raise ValueError("zonotope_support needs an atomic density")
    x = _check_point(atoms, x)
    return float(sum(lam * abs(np.dot(u, x)) for u, lam in atoms.atoms))


def support_value(f, spec, x):
    """``H(x) = (T_p f(x))^(1/p)``, positively 1-homogeneous."""
    hp = lp_cosine(f, spec, x)
    if hp < 0.0:
        raise DomainError(f"T_p f(x) = {hp:.3e} < 0; no p-th root (density is not positive)")
    return hp ** (1.0 / spec.p)


def cap_cosine_transform(center, radius, x):
    """Cosine transform of the indicator of the cap pair ``|<xi, c>| >= cos(radius)`` on S^2.

    Semi-analytic: the azimuthal integral of ``|A + C cos(phi)|`` is done
    in closed form and the polar integral adaptively, split where the
    great circle ``x^⊥`` enters the cap. Used as an accurate reference for
    a discontinuous density.
    """
    c = np.asarray(center, dtype=float)
    c = c / np.linalg.norm(c)
    x = np.asarray(x, dtype=float)
    if c.size != 3 or x.size != 3:
        raise ValueError("cap_cosine_transform works on S^2 only")
    if not 0.0 < radius < math.pi / 2:
        raise ValueError("cap radius must lie in (0, pi/2)")
    a0 = float(np.dot(x, c))
    c0 = float(np.linalg.norm(x - a0 * c))

    def ring(s):
        A, C = a0 * math.cos(s), c0 * math.sin(s)
        if abs(A) >= C:
            return 2.0 * math.pi * abs(A)
        phi = math.acos(-A / C)
        return 4.0 * A * phi + 4.0 * C * math.sin(phi) - 2.0 * math.pi * A

    s_star = math.atan2(abs(a0), c0)
    points = [s_star] if 0.0 < s_star < radius else None
    val, _ = sp_integrate.quad(lambda s: math.sin(s) * ring(s), 0.0, radius,
                               points=points, epsabs=1e-15, epsrel=1e-13, limit=200)
    return 2.0 * val
