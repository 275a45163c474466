"""N-expansion continued fractions: exact arithmetic, fundamental-interval
geometry, Hausdorff-dimension bound calculators, numerical dimension
estimators, and certified proof-inequality verifiers."""

from .bounds import (
    DimensionBracket,
    TailBracket,
    find_good_beta,
    good_bracket,
    good_lower_condition,
    good_lower_exponent,
    jarnik_bracket,
    jarnik_lower,
    jarnik_upper,
    solve_implicit_s,
    tail_bracket,
)
from .errors import (
    AdmissibilityError,
    BudgetExceededError,
    CapExceededError,
    DivergenceError,
    DomainError,
    NExpansionError,
    NoRootError,
    NonConvergenceError,
    PrecisionInsufficientError,
)
from .estimator import (
    AlphabetSpec,
    DimensionEstimate,
    EstimateMethod,
    SandwichReport,
    estimate_dim_collocation,
    estimate_dim_words,
    sandwich_check,
)
from .expansion import (
    ConvergentPair,
    DigitWord,
    apply_map,
    check_determinant,
    convergents,
    denominator_pair,
    digits_of,
    evaluate,
)
from .intervals import (
    FundamentalInterval,
    check_ratio_bounds,
    check_two_sided_bounds,
    contains_interval,
    fundamental_interval,
    interval_length,
    intervals_disjoint,
    telescoping_sum,
)
from .verify import (
    ConditionCertificate,
    ConditionId,
    check_growth_values,
    condition_threshold,
    verify_covering,
    verify_good_children,
    verify_growth,
    verify_mass_distribution,
    verify_sufficiency,
    verify_telescoping,
)

__version__ = "0.1.0"
