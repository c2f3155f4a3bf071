"""Contour-integral transforms, divided differences, and symmetric-product
maps of planar domains, with empirical Holder-exponent experiments."""

__version__ = "0.1.0"

from .catalog import (
    AnalyticFunction,
    PhiSpec,
    blaschke_function,
    conj_phi,
    exp_function,
    identity_function,
    monomial_function,
    monomial_phi,
    parse_phi,
    pole_function,
    pole_phi,
    weierstrass,
    weierstrass_phi,
)
from .cauchy import (
    BoundarySamples,
    apply_multiplier,
    boundary_samples,
    cauchy_transform,
    coincidence_order,
    derivative_symmetrized,
    generic_transform,
    norlund_transform,
    symmetrized_transform,
    truncated_pv,
    truncation_growth_fit,
)
from .divdiff import (
    SymmetryReport,
    check_symmetry,
    contour_derivative,
    divdiff_analytic,
    divdiff_gh,
    divdiff_recursive,
)
from .errors import (
    AsymmetryError,
    BoundaryProximityError,
    CoincidentNodesError,
    ConfigError,
    DegenerateTruncationError,
    InvalidGeometryError,
    KernelProximityError,
    MissingDerivativeFieldError,
    NonconvergentWindingError,
    RootFindingError,
    SymprodError,
    WrongRegionError,
)
from .geometry import (
    BoundaryGrid,
    Contour,
    DomainBoundary,
    annulus,
    build_domain,
    classify_point,
    classify_points,
    disc,
    distance_to_boundary,
    domain_diameter,
    ellipse,
    sample_boundary,
    star,
    winding_number,
)
from .holder import (
    ExponentFit,
    SampledField,
    calibration_fields,
    ck_norm,
    estimate_exponent,
    holder_seminorm,
    pair_statistics,
)
from .propermap import (
    ProperMapSpec,
    boundary_regularity_experiment,
    evaluate_proper_map,
    parse_proper_map,
    route_agreement,
)
from .quadrature import (
    SimplexRule,
    gauss_legendre,
    periodic_trapezoid,
    simplex_integrate,
    simplex_moment,
    simplex_rule,
)
from .symmetric import (
    LojasiewiczReport,
    RootMultiset,
    classify_symmetric_point,
    complete_symmetric,
    delta_metric,
    desymmetrize,
    diagonal_pullback,
    lojasiewicz_check,
    lojasiewicz_exponent,
    newton_map,
    power_sum_transform,
    power_sums,
    push_forward,
    signature_census,
    symmetric_power_map,
    symmetrize,
)
