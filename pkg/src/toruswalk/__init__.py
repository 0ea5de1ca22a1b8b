"""Exact distributions, box discrepancy, and convergence bounds for
finitely generated random walks on the d-torus."""

__version__ = "0.1.0"

from .bounds import (
    BoundReport,
    bound_report,
    choose_M,
    cohort_sum_S,
    fit_decay_exponent,
    theorem1_lower_bound,
    theorem2_upper_bound,
)
from .diophantine import (
    BadApproxEstimate,
    dirichlet_search,
    estimate_bad_constant,
    nearest_integer_distance,
)
from .discrepancy import (
    Box,
    DiscrepancyResult,
    box_mass,
    discrepancy_exact,
    discrepancy_grid,
)
from .errors import (
    CapExceededError,
    InfeasibleError,
    InternalConsistencyError,
    ToruswalkError,
    ValidationError,
)
from .fourier import (
    best_fourier_lower_bound,
    etk_upper_bound,
    qhat,
    single_h_lower_bound,
    weight_R,
)
from .generators import (
    GeneratorMatrix,
    builtin_generators,
    load_generators,
    matrix_to_text,
    parse_matrix_text,
    read_matrix,
    write_matrix,
)
from .scan import (
    ScanConfig,
    ScanReport,
    run_scan,
    write_report,
)
from .walk import (
    LatticeDistribution,
    WeightedPointSet,
    exact_walk_distribution,
    pointset_from_csv_text,
    pointset_to_csv_text,
    project_to_torus,
    simulate_walk,
)

__all__ = [
    "BadApproxEstimate",
    "BoundReport",
    "Box",
    "CapExceededError",
    "DiscrepancyResult",
    "GeneratorMatrix",
    "InfeasibleError",
    "InternalConsistencyError",
    "LatticeDistribution",
    "ScanConfig",
    "ScanReport",
    "ToruswalkError",
    "ValidationError",
    "WeightedPointSet",
    "best_fourier_lower_bound",
    "bound_report",
    "box_mass",
    "builtin_generators",
    "choose_M",
    "cohort_sum_S",
    "dirichlet_search",
    "discrepancy_exact",
    "discrepancy_grid",
    "estimate_bad_constant",
    "etk_upper_bound",
    "exact_walk_distribution",
    "fit_decay_exponent",
    "load_generators",
    "matrix_to_text",
    "nearest_integer_distance",
    "parse_matrix_text",
    "pointset_from_csv_text",
    "pointset_to_csv_text",
    "project_to_torus",
    "qhat",
    "read_matrix",
    "run_scan",
    "simulate_walk",
    "single_h_lower_bound",
    "theorem1_lower_bound",
    "theorem2_upper_bound",
    "weight_R",
    "write_matrix",
    "write_report",
]
