"""denvec: exact mutation engine for cluster algebras of geometric type.

The package computes seed mutations with exact sparse Laurent arithmetic,
reads denominator vectors off expansions and independently via the matrix
recurrence, and ships a property-checking harness (exhaustive sweeps,
fixed-seed fuzzing, bounded distance queries) whose central checked claim
is positivity of denominator vectors for skew-symmetric exchange matrices.
"""

from .dvector import (
    dvec_along_walk,
    dvec_from_expansion,
    dvec_recurrence_step,
    dvec_table,
    dvec_walk_trace,
    neg_basis_dvectors,
)
from .errors import (
    ArityMismatchError,
    DenvecError,
    InputError,
    NonReducedWalkError,
    NotDivisibleError,
    ResourceExceededError,
)
from .explorer import (
    TrialReport,
    bfs_distance,
    build_report,
    enumerate_walks,
    exhaustive_campaign,
    fuzz_campaign,
    gen_matrix,
    involution_trials,
    random_reduced_walk,
    report_exit_code,
    run_check_suite,
    tropical_crosscheck_trials,
    with_principal_rows,
)
from .laurent import DEFAULT_TERM_CAP, LaurentPolynomial, product
from .seed import (
    ExchangeMatrix,
    Seed,
    apply_walk,
    exchange_numerator,
    matrix_from_json,
    root_seed,
    seed_key,
    seed_mutate,
    validate_walk,
)
from .tropical import (
    TropicalElement,
    principal_coefficients,
    trivial_coefficients,
    y_mutate,
)

__version__ = "0.1.0"

__all__ = [
    "ArityMismatchError",
    "DEFAULT_TERM_CAP",
    "DenvecError",
    "ExchangeMatrix",
    "InputError",
    "LaurentPolynomial",
    "NonReducedWalkError",
    "NotDivisibleError",
    "ResourceExceededError",
    "Seed",
    "TrialReport",
    "TropicalElement",
    "apply_walk",
    "bfs_distance",
    "build_report",
    "dvec_along_walk",
    "dvec_from_expansion",
    "dvec_recurrence_step",
    "dvec_table",
    "dvec_walk_trace",
    "enumerate_walks",
    "exchange_numerator",
    "exhaustive_campaign",
    "fuzz_campaign",
    "gen_matrix",
    "involution_trials",
    "matrix_from_json",
    "neg_basis_dvectors",
    "principal_coefficients",
    "product",
    "random_reduced_walk",
    "report_exit_code",
    "root_seed",
    "run_check_suite",
    "seed_key",
    "seed_mutate",
    "tropical_crosscheck_trials",
    "trivial_coefficients",
    "validate_walk",
    "with_principal_rows",
    "y_mutate",
]
