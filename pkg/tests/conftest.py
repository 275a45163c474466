import pytest

from nexpansion.estimator import (
    AlphabetSpec,
    estimate_dim_collocation,
    estimate_dim_words,
)

# The bounded-digit windows exercised by the sandwich acceptance criterion.
SANDWICH_CASES = [(1, m) for m in (4, 6, 8, 12, 16, 20)] + [(2, m) for m in (6, 8, 12)]

# Every window {n..m} with m - n <= 5 and n <= 3 (cross-validation scale).
CROSSVAL_CASES = [(n, n + d) for n in (1, 2, 3) for d in range(0, 6)]


@pytest.fixture(scope="session")
def sandwich_estimates():
    """Both estimators on each sandwich window, at default budgets."""
    out = {}
    for n, m in SANDWICH_CASES:
        spec = AlphabetSpec(n, n, m)
        out[(n, m)] = (
            estimate_dim_collocation(spec),
            estimate_dim_words(spec),
        )
    return out


@pytest.fixture(scope="session")
def crossval_estimates():
    """Both estimators on each small window (reduced word budget)."""
    out = {}
    for n, m in CROSSVAL_CASES:
        spec = AlphabetSpec(n, n, m)
        out[(n, m)] = (
            estimate_dim_collocation(spec),
            estimate_dim_words(spec, budget=10**6),
        )
    return out
