"""Closed-form and implicit Hausdorff-dimension bound calculators.

Two regimes are covered for digit-restricted expansion sets:

- bounded digits in [n, m]: explicit lower/upper bounds whose hypotheses
  are m > 2n+1 and m > n respectively;
- uniformly large digits >= alpha: a bracket around 1/2 whose validity
  requires log(alpha-1) > exp(1+n), plus the implicit covering-exponent
  equation (2s-1)(alpha-1)^(2s-1) = 1+n solved by bisection.

All logarithms are natural.  Closed forms are evaluated with mpmath at the
configured precision (NEXP_PRECISION_BITS, default 128 bits) and returned
as floats; raw, unclamped values are kept alongside [0,1]-clamped ones so
that vacuous bounds stay visible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from mpmath import mp

from .errors import CapExceededError, DivergenceError, DomainError, NoRootError
from .precision import working_precision
from .sums import power_sum

__all__ = [
    "DimensionBracket",
    "TailBracket",
    "find_good_beta",
    "good_bracket",
    "good_lower_condition",
    "good_lower_exponent",
    "jarnik_bracket",
    "jarnik_lower",
    "jarnik_upper",
    "solve_implicit_s",
    "tail_bracket",
]

_SUM_CHUNK = 1 << 20


@dataclass(frozen=True)
class DimensionBracket:
    """A (lower, upper) dimension bracket with validity bookkeeping.

    ``raw_*`` are the unclamped closed-form values (they can leave [0,1]
    when the hypotheses are violated or the bound is vacuous); ``lower``
    and ``upper`` are clamped to [0,1].
    """

    raw_lower: float
    raw_upper: float
    lower: float
    upper: float
    lower_valid: bool
    upper_valid: bool


@dataclass(frozen=True)
class TailBracket:
    """Certified two-sided bracket of sum_{k=alpha}^{inf} k^(-2s)."""

    low: float
    high: float
    cutoff: int


def _clamp(value: float) -> float:
    if math.isnan(value):
        return value
    return min(1.0, max(0.0, value))


def _check_pair(n: int, m: int) -> None:
    if n < 1:
        raise DomainError(f"expansion parameter must be >= 1, got {n}")
    if m < n:
        raise DomainError(f"digit cap {m} must be >= parameter {n}")


def jarnik_lower(n: int, m: int) -> tuple[float, bool]:
    """Lower bound 1 - 2(n+1)/((m+1) log(n+1)); hypothesis m > 2n+1.

    Note n = 1 gives 1 - 4/((m+1) log 2), the classical shape.
    """
    _check_pair(n, m)
    with working_precision():
        value = 1 - mp.mpf(2 * (n + 1)) / ((m + 1) * mp.log(n + 1))
    return float(value), m > 2 * n + 1


def jarnik_upper(n: int, m: int) -> tuple[float, bool]:
    """Upper bound 1 - n/((m+1) log((m+1)^2/n)); hypothesis m > n."""
    _check_pair(n, m)
    with working_precision():
        value = 1 - mp.mpf(n) / ((m + 1) * mp.log(mp.mpf(m + 1) ** 2 / n))
    return float(value), m > n


def jarnik_bracket(n: int, m: int) -> DimensionBracket:
    """Both bounded-digit bounds as one bracket record."""
    raw_lower, lower_valid = jarnik_lower(n, m)
    raw_upper, upper_valid = jarnik_upper(n, m)
    return DimensionBracket(
        raw_lower, raw_upper, _clamp(raw_lower), _clamp(raw_upper), lower_valid, upper_valid
    )


def good_lower_exponent(alpha: float) -> float:
    """The lower-bound exponent 1/2 + 1/(2 log(alpha+2))."""
    if alpha <= -1:
        raise DomainError(f"alpha must exceed -1, got {alpha}")
    with working_precision():
        return float(mp.mpf(1) / 2 + 1 / (2 * mp.log(mp.mpf(alpha) + 2)))


def good_bracket(n: int, alpha: float) -> DimensionBracket:
    """Dimension bracket for digits >= alpha.

    lower = 1/2 + 1/(2 log(alpha+2)), upper = 1/2 + loglog(alpha-1) /
    (2 log(alpha-1)); both flags are set iff log(alpha-1) > exp(1+n).
    The upper form needs alpha > 2 and is reported as NaN below that.
    """
    if n < 1:
        raise DomainError(f"expansion parameter must be >= 1, got {n}")
    if alpha <= 1:
        raise DomainError(f"alpha must exceed 1, got {alpha}")
    if alpha < n:
        raise DomainError(f"alpha must be >= parameter {n}, got {alpha}")
    with working_precision():
        a = mp.mpf(alpha)
        raw_lower = float(mp.mpf(1) / 2 + 1 / (2 * mp.log(a + 2)))
        if alpha > 2:
            log_am1 = mp.log(a - 1)
            raw_upper = float(mp.mpf(1) / 2 + mp.log(log_am1) / (2 * log_am1))
            valid = bool(log_am1 > mp.exp(1 + n))
        else:
            raw_upper = math.nan
            valid = False
    return DimensionBracket(
        raw_lower, raw_upper, _clamp(raw_lower), _clamp(raw_upper), valid, valid
    )


def solve_implicit_s(n: int, alpha: float, tol: float = 1e-12) -> float:
    """Root s in (1/2, 1] of (2s-1)(alpha-1)^(2s-1) = 1+n, by bisection.

    The left side is strictly increasing in s, vanishes at s = 1/2, and
    must reach 1+n at s = 1, which requires alpha >= n+2.
    """
    if n < 1:
        raise DomainError(f"expansion parameter must be >= 1, got {n}")
    if tol <= 0:
        raise DomainError(f"tolerance must be positive, got {tol}")
    if alpha <= 1:
        raise DomainError(f"alpha must exceed 1, got {alpha}")
    with working_precision():
        log_am1 = mp.log(mp.mpf(alpha) - 1)
        target = mp.mpf(1 + n)

        def residual(s: "mp.mpf") -> "mp.mpf":
            x = 2 * s - 1
            return x * mp.exp(x * log_am1) - target

        if residual(mp.mpf(1)) < 0:
            raise NoRootError(
                f"(2s-1)(alpha-1)^(2s-1) stays below {1 + n} on (1/2, 1]; "
                f"need alpha >= {n + 2}"
            )
        lo, hi = mp.mpf(1) / 2, mp.mpf(1)
        while hi - lo > tol:
            mid = (lo + hi) / 2
            if residual(mid) < 0:
                lo = mid
            else:
                hi = mid
        return float((lo + hi) / 2)


def tail_bracket(alpha: int, s: float, cutoff: int) -> TailBracket:
    """Two-sided bracket of sum_{k=alpha}^{inf} k^(-2s) via integral bounds.

    The partial sum up to ``cutoff`` is exact (to float accuracy); the
    remainder is pinned between the integrals from cutoff+1 and cutoff.
    """
    if s <= 0.5:
        raise DivergenceError(f"tail sum diverges for s <= 1/2, got s = {s}")
    if alpha < 1:
        raise DomainError(f"alpha must be >= 1, got {alpha}")
    if cutoff < alpha:
        raise DomainError(f"cutoff {cutoff} must be >= alpha {alpha}")
    partial = power_sum(2.0 * s, alpha, cutoff)
    t = 2.0 * s - 1.0
    low = partial + (cutoff + 1) ** (-t) / t
    high = partial + cutoff ** (-t) / t
    return TailBracket(low, high, cutoff)


def _condition_threshold(n: int, alpha: float) -> tuple[int, float, float]:
    """Start digit, exponent 2s, and required partial-sum value."""
    s = good_lower_exponent(alpha)
    start = max(int(math.ceil(alpha)), 1)
    # n^s 3^(-s) sum >= 1  <=>  sum >= (3/n)^s
    return start, 2.0 * s, (3.0 / n) ** s


def _range_sum(p: float, a: int, b: int) -> float:
    """Direct chunked sum_{k=a}^{b} k^(-p)."""
    total = 0.0
    for start in range(a, b + 1, _SUM_CHUNK):
        k = np.arange(start, min(start + _SUM_CHUNK, b + 1), dtype=np.float64)
        total += float(np.sum(k**-p))
    return total


def good_lower_condition(n: int, alpha: float, beta: int) -> bool:
    """Mass-distribution sufficiency for the digit window [alpha, beta].

    With s = 1/2 + 1/(2 log(alpha+2)) fixed, checks
    n^s 3^(-s) sum_{k=alpha}^{beta} k^(-2s) >= 1, summing directly.
    """
    if n < 1:
        raise DomainError(f"expansion parameter must be >= 1, got {n}")
    if alpha < n:
        raise DomainError(f"alpha must be >= parameter {n}, got {alpha}")
    if beta <= alpha:
        raise DomainError(f"beta {beta} must exceed alpha {alpha}")
    start, p, needed = _condition_threshold(n, alpha)
    return _range_sum(p, start, beta) >= needed


def find_good_beta(n: int, alpha: float, cap: int | None = None) -> int:
    """Smallest doubling-search beta satisfying ``good_lower_condition``.

    Tries beta = 2*alpha, 4*alpha, ... and returns the first success; the
    partial sums are accumulated incrementally so the total work is linear
    in the final beta.  Raises ``CapExceededError`` past ``cap``
    (default alpha * 2**16).
    """
    if n < 1:
        raise DomainError(f"expansion parameter must be >= 1, got {n}")
    if alpha < n:
        raise DomainError(f"alpha must be >= parameter {n}, got {alpha}")
    start, p, needed = _condition_threshold(n, alpha)
    if cap is None:
        cap = start << 16
    total = 0.0
    prev_end = start - 1
    beta = start
    while True:
        beta *= 2
        if beta > cap:
            raise CapExceededError(
                f"condition not met by any beta <= {cap} (alpha = {alpha})"
            )
        total += _range_sum(p, prev_end + 1, beta)
        prev_end = beta
        if total >= needed:
            return beta
