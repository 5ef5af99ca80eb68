"""spherelab: L^p-cosine and spherical Radon transforms of even densities on
S^{n-1}, their closed-form derivatives, and curvature of the convex bodies
they generate.
"""

from types import ModuleType as _ModuleType

from .errors import DomainError, PoleError
from .specfun import c_const, gamma_fn, real_sph_harm
from .squad import (
    QuadratureRule,
    build_sphere_rule,
    build_subsphere_rule,
    build_weighted_axis_rule,
    integrate,
)
from .transforms import (
    SphericalDensity,
    TransformSpec,
    cosine,
    lp_cosine,
    radon,
    support_value,
    zonotope_support,
)
from .deriv import (
    HessianReport,
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
from .convexity import (
    CurvatureReport,
    ReverseWeingarten,
    boundary_point,
    convexity_check,
    curvature_report,
    direction_grid,
    gauss_kronecker,
    lindquist_1,
    lindquist_p,
    reverse_weingarten,
)
from .harmonics import inversion_ratio_check, project, transform_multiplier

__version__ = "0.1.0"

__all__ = sorted(name for name, obj in globals().items()
                 if not name.startswith("_") and not isinstance(obj, _ModuleType))
