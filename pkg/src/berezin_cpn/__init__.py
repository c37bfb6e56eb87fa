"""Numerical Berezin quantization on CP^n: coherent states, symbols, star product and cut locus."""

from .core import (
    DEFAULT_TOL,
    CutLocusError,
    DimensionMismatchError,
    InvalidRayError,
    ModelConfig,
    NotUnitaryError,
    PointAtInfinity,
    PointAtInfinityError,
    UnsupportedDimensionError,
    is_at_infinity,
)
from .geometry import (
    cayley_distance,
    fs_metric,
    geodesic_distance,
    geodesic_exp,
    in_cut_locus,
    kahler_potential,
    poisson_bracket,
)
from .kahlerfn import (
    characteristic,
    corollary_check,
    diastasis,
    embed,
    isometry_defect,
    polar_vanishing_order,
    two_point,
)
from .quadrature import QuadratureRule, build_grid_rule, integrate, monomial_integral
from .quantize import (
    bergman_kernel,
    covariant_symbol,
    epsilon_function,
    fh_inner,
    kernel_G,
    resolution_defect,
    star_product,
)
from .repspace import (
    chart_action,
    coherent_vector,
    covariance_defect,
    dimension,
    generators,
    group_action_matrix,
    normalize,
    overlap,
    polar_divisor_member,
)

__version__ = "0.1.0"
