"""Special functions: real Gamma, the derivative normalization constant,
and real spherical harmonics on S^2.
"""

import math

import numpy as np
from scipy.special import lpmv

from .errors import PoleError

# Lanczos approximation, g = 7, nine terms (~15 significant digits for x > 0.5).
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

POLE_RADIUS = 1e-12


def _near_nonpositive_integer(x, radius=POLE_RADIUS):
    if x > radius:
        return False
    return abs(x - round(x)) <= radius


def gamma_fn(x):
    """Euler Gamma function for real ``x``.

    Lanczos series for ``x >= 0.5``; reflection formula below that.

    Raises
    ------
    PoleError
        If ``x`` lies within ``1e-12`` of a nonpositive integer.
    """
    x = float(x)
    if _near_nonpositive_integer(x):
        raise PoleError(f"Gamma has a pole at {round(x)} (got x={x!r})")
    if x < 0.5:
        # Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return math.pi / (math.sin(math.pi * x) * gamma_fn(1.0 - x))
    z = x - 1.0
    acc = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    # split the power to avoid overflow of t**(z+0.5) before the exp(-t) factor
    half = t ** ((z + 0.5) / 2.0)
    return math.sqrt(2.0 * math.pi) * half * (half * math.exp(-t)) * acc


def is_even_integer(t, tol=POLE_RADIUS):
    """True if ``t`` is within ``tol`` of an even integer."""
    return abs(t / 2.0 - round(t / 2.0)) * 2.0 <= tol


def c_const(t):
    """Normalization constant ``C_t = 2^(t+1) sqrt(pi) Gamma((t+1)/2) / Gamma(-t/2)``.

    Defined for ``t > -1`` away from the even nonnegative integers, where
    ``Gamma(-t/2)`` has poles.

    >>> c_const(1.0)
    -2.0
    >>> round(c_const(3.0), 12)
    12.0
    """
    t = float(t)
    if t <= -1.0:
        raise ValueError(f"C_t requires t > -1 (got t={t!r})")
    if t >= -POLE_RADIUS and is_even_integer(t):
        raise PoleError(f"C_t is undefined at the even integer t={round(t)}")
    return 2.0 ** (t + 1.0) * math.sqrt(math.pi) * gamma_fn((t + 1.0) / 2.0) / gamma_fn(-t / 2.0)


def real_sph_harm(l, m, xyz):
    """Real spherical harmonic ``Y_l^m`` on S^2 with unit L2 norm.

    ``m > 0`` uses ``cos(m phi)``, ``m < 0`` uses ``sin(|m| phi)``. The
    Condon-Shortley phase of ``scipy.special.lpmv`` is kept.

    Parameters
    ----------
    l, m : int
        Degree and order, ``|m| <= l``.
    xyz : array_like, shape (..., 3)
        Points on the unit sphere.
    """
    if abs(m) > l or l < 0:
        raise ValueError(f"invalid harmonic indices l={l}, m={m}")
    xyz = np.asarray(xyz, dtype=float)
    z = np.clip(xyz[..., 2], -1.0, 1.0)
    phi = np.arctan2(xyz[..., 1], xyz[..., 0])
    am = abs(m)
    norm = math.sqrt((2 * l + 1) / (4.0 * math.pi) * math.factorial(l - am) / math.factorial(l + am))
    leg = lpmv(am, l, z)
    if m == 0:
        return norm * leg
    if m > 0:
        return math.sqrt(2.0) * norm * leg * np.cos(am * phi)
    return math.sqrt(2.0) * norm * leg * np.sin(am * phi)
