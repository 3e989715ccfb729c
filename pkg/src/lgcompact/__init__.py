"""Exact computations for Givental-type Landau-Ginzburg models of Fano
weighted complete intersections: Laurent periods, Newton and dual polytopes,
and component counts for the special fibers of their compactified pencils.
"""

from lgcompact.laurent import (
    LaurentPolynomial,
    constant_term,
    constant_term_power_pruned,
    multiply,
    newton_polytope,
    parse_laurent,
    period_sequence,
    power,
)
from lgcompact.pencil import (
    central_fiber_report,
    compactified_pencil,
    covering_fan_rays,
    curve_stratum_count,
    fiber_report,
    flop_obstruction,
    infinity_fiber_report,
    kappa,
    point_stratum_count_threefold,
    verify_conjecture_components,
    verify_conjecture_hodge,
)
from lgcompact.polytope import (
    Facet,
    RationalPolytope,
    convex_hull,
    givental_toric_polynomial,
    integral_boundary_points,
    integral_points,
    is_reflexive,
    polar_dual,
)
from lgcompact.wci import (
    GiventalModel,
    NefPartition,
    WeightedCIModel,
    ambient_product,
    anticanonical_sections,
    closed_form_period,
    covering_model,
    dual_matrix,
    find_nef_partitions,
    givental_polynomial,
    iseries,
    make_model,
    nice_partition,
)

__version__ = "0.1.0"
