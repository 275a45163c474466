"""Certified verification of the dimension-proof inequalities.

Each verifier enumerates admissible digit prefixes exhaustively (in
shortest-then-lexicographic order, with exact integer denominators),
evaluates both sides of its inequality, and returns a machine-checkable
``ConditionCertificate``.  Rational factors and interval lengths are
exact; transcendental powers go through fast float arithmetic first, and
any comparison landing within a small relative margin is re-decided with
mpmath at the configured verification precision (>= 128 bits).  If even
that comparison falls inside the 2^-96 relative abstention margin, the
verifier raises ``PrecisionInsufficientError`` rather than guessing.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np
from mpmath import mp

from .bounds import tail_bracket
from .errors import DomainError, PrecisionInsufficientError
from .expansion import DigitWord
from .intervals import interval_length, telescoping_sum
from .precision import ABSTENTION_MARGIN_EXP, VERIFY_PRECISION_BITS, precision_bits

__all__ = [
    "ConditionCertificate",
    "ConditionId",
    "check_growth_values",
    "condition_threshold",
    "verify_covering",
    "verify_good_children",
    "verify_growth",
    "verify_mass_distribution",
    "verify_sufficiency",
    "verify_telescoping",
]

# Fast-path float comparisons abstain to the exact path inside this band.
_FAST_REL_MARGIN = 1e-11


class ConditionId(enum.Enum):
    MASS_DIST_4_1 = "mass_distribution"
    COVERING_4_2 = "covering"
    SUFFICIENCY_4_005 = "sufficiency"
    TELESCOPE_4_6 = "telescoping"
    GOOD_CHILDREN = "good_children"
    GROWTH_LEMMA = "growth"


@dataclass(frozen=True)
class ConditionCertificate:
    """Outcome of one exhaustive inequality check.

    FAIL certificates always carry the violating word; re-running the
    verifier on that word alone reproduces the violation.
    """

    condition_id: ConditionId
    parameters: dict
    status: str
    witness: tuple[int, ...] | None
    count: int
    precision_bits: int

    @property
    def passed(self) -> bool:
        return self.status == "PASS"

    def to_json_dict(self) -> dict:
        return {
            "condition_id": self.condition_id.name,
            "params": self.parameters,
            "status": self.status,
            "witness_digits": list(self.witness) if self.witness is not None else None,
            "words_checked": self.count,
            "precision_bits": self.precision_bits,
        }


def _decode_word(index: int, level: int, lo: int, base: int) -> tuple[int, ...]:
    """Digits of the index-th level word in lexicographic order."""
    digits = []
    for _ in range(level):
        index, offset = divmod(index, base)
        digits.append(lo + offset)
    return tuple(reversed(digits))


def _worst_q(n: int, hi: int, level: int) -> int:
    q_curr, q_prev = 1, 0
    for _ in range(level):
        q_curr, q_prev = hi * q_curr + n * q_prev, q_curr
    return q_curr


def _prefix_levels(
    n: int, lo: int, hi: int, max_level: int
) -> Iterator[tuple[int, np.ndarray, np.ndarray]]:
    """Yield (level, q_curr, q_prev) arrays for all words over [lo, hi]."""
    if _worst_q(n, hi, max_level + 1) >= 2**53:
        raise DomainError(
            f"depth {max_level} exceeds exact float64 denominators for digits <= {hi}"
        )
    q_curr = np.array([1], dtype=np.int64)
    q_prev = np.array([0], dtype=np.int64)
    digits = np.arange(lo, hi + 1, dtype=np.int64)
    for level in range(0, max_level + 1):
        yield level, q_curr, q_prev
        if level == max_level:
            break
        q_next = (q_curr[:, None] * digits[None, :] + n * q_prev[:, None]).ravel()
        q_prev = np.repeat(q_curr, digits.size)
        q_curr = q_next


def _mpf_pow(value: Fraction, exponent: "mp.mpf") -> "mp.mpf":
    return mp.power(mp.mpf(value.numerator) / mp.mpf(value.denominator), exponent)


def _abstention_compare(lhs: "mp.mpf", rhs: "mp.mpf", context: str) -> int:
    """-1, 0(+abstain), or 1 comparing lhs to rhs at the current precision."""
    gap = abs(lhs - rhs)
    if gap <= mp.mpf(2) ** ABSTENTION_MARGIN_EXP * max(abs(lhs), abs(rhs)):
        raise PrecisionInsufficientError(
            f"{context}: sides agree to within the abstention margin; "
            f"raise NEXP_PRECISION_BITS"
        )
    return -1 if lhs < rhs else 1


def _exact_children_verdict(
    n: int, m: int, s: float, digits: tuple[int, ...], require_at_least: bool, bits: int
) -> bool:
    """Exact-rational re-check of one children-sum comparison."""
    word = DigitWord(n, digits)
    parent = interval_length(word) if digits else Fraction(1)
    children = [interval_length(word.extend(k)) for k in range(n, m + 1)]
    with mp.workprec(bits):
        exponent = mp.mpf(s)
        lhs = mp.fsum(_mpf_pow(c, exponent) for c in children)
        rhs = _mpf_pow(parent, exponent)
        sign = _abstention_compare(lhs, rhs, "children sum vs parent")
    return sign >= 0 if require_at_least else sign <= 0


def _certify_children_sums(
    condition: ConditionId,
    n: int,
    m: int,
    s: float,
    depth: int,
    bits: int,
) -> ConditionCertificate:
    if m < n:
        raise DomainError(f"digit cap {m} must be >= parameter {n}")
    if not 0.0 < s < 1.0:
        raise DomainError(f"exponent must lie in (0,1), got {s}")
    if depth < 1:
        raise DomainError(f"depth must be >= 1, got {depth}")
    require_at_least = condition is ConditionId.MASS_DIST_4_1
    base = m - n + 1
    log_n = math.log(n)
    k_row = np.arange(n, m + 1, dtype=np.int64)
    count = 0
    witness: tuple[int, ...] | None = None
    for level, q_curr, q_prev in _prefix_levels(n, n, m, depth - 1):
        count += q_curr.size
        parent_log = (
            level * log_n
            - np.log(q_curr.astype(np.float64))
            - np.log((q_curr + q_prev).astype(np.float64))
        )
        q_child = q_curr[:, None] * k_row[None, :] + n * q_prev[:, None]
        child_log = (
            (level + 1) * log_n
            - np.log(q_child.astype(np.float64))
            - np.log((q_child + q_curr[:, None]).astype(np.float64))
        )
        children_sum = np.exp(s * child_log).sum(axis=1)
        parent_pow = np.exp(s * parent_log)
        diff = children_sum - parent_pow
        band = _FAST_REL_MARGIN * np.maximum(children_sum, parent_pow)
        if require_at_least:
            suspect = diff < band
        else:
            suspect = diff > -band
        for index in np.nonzero(suspect)[0]:
            digits = _decode_word(int(index), level, n, base)
            if not _exact_children_verdict(n, m, s, digits, require_at_least, bits):
                witness = digits
                break
        if witness is not None:
            break
    status = "PASS" if witness is None else "FAIL"
    return ConditionCertificate(
        condition,
        {"n": n, "m": m, "s": s, "depth": depth},
        status,
        witness,
        count,
        bits,
    )


def _verify_bits(override: int | None) -> int:
    if override is not None:
        return max(128, override)
    return precision_bits(default=VERIFY_PRECISION_BITS)


def verify_mass_distribution(
    n: int, m: int, s: float, depth: int, bits: int | None = None
) -> ConditionCertificate:
    """Check |I_{l}|^s <= sum_k |I_{l+1}(.,k)|^s for every prefix of length < depth.

    Passing at exponent s (for all depths) is the sufficient condition for
    dim >= s via the recursively distributed mass on the digit window.
    """
    return _certify_children_sums(
        ConditionId.MASS_DIST_4_1, n, m, s, depth, _verify_bits(bits)
    )


def verify_covering(
    n: int, m: int, s: float, depth: int, bits: int | None = None
) -> ConditionCertificate:
    """Mirror image of ``verify_mass_distribution``: parent >= children sum.

    At any fixed word and s, at most one of the two conditions can fail
    strictly; exact ties abstain via ``PrecisionInsufficientError``.
    """
    return _certify_children_sums(
        ConditionId.COVERING_4_2, n, m, s, depth, _verify_bits(bits)
    )


def verify_sufficiency(
    n: int, m: int, s: float, depth: int, bits: int | None = None
) -> ConditionCertificate:
    """Check (n+1)^(1-s) [1 - n(q+q')/((m+1)q + n q')] >= 1 over all prefixes.

    The bracketed factor is exact rational: ((m+1-n) q) / ((m+1) q + n q').
    The certificate records the observed minimum of the factor and the
    closed-form worst case 1 - (n+1)/(m+1), plus whether the theorem
    hypothesis m > 2n+1 holds.
    """
    if m < n:
        raise DomainError(f"digit cap {m} must be >= parameter {n}")
    if not 0.0 < s < 1.0:
        raise DomainError(f"exponent must lie in (0,1), got {s}")
    if depth < 1:
        raise DomainError(f"depth must be >= 1, got {depth}")
    bits = _verify_bits(bits)
    base = m - n + 1
    with mp.workprec(bits):
        threshold = mp.power(n + 1, mp.mpf(s) - 1)
        threshold_float = float(threshold)
    count = 0
    witness: tuple[int, ...] | None = None
    min_factor = math.inf
    for level, q_curr, q_prev in _prefix_levels(n, n, m, depth - 1):
        count += q_curr.size
        qc = q_curr.astype(np.float64)
        qp = q_prev.astype(np.float64)
        factor = (m + 1 - n) * qc / ((m + 1) * qc + n * qp)
        min_factor = min(min_factor, float(factor.min()))
        suspect = factor < threshold_float * (1.0 + _FAST_REL_MARGIN)
        for index in np.nonzero(suspect)[0]:
            i = int(index)
            exact = Fraction(
                (m + 1 - n) * int(q_curr[i]),
                (m + 1) * int(q_curr[i]) + n * int(q_prev[i]),
            )
            with mp.workprec(bits):
                lhs = mp.mpf(exact.numerator) / mp.mpf(exact.denominator)
                sign = _abstention_compare(lhs, threshold, "sufficiency factor")
            if sign < 0:
                witness = _decode_word(i, level, n, base)
                break
        if witness is not None:
            break
    status = "PASS" if witness is None else "FAIL"
    return ConditionCertificate(
        ConditionId.SUFFICIENCY_4_005,
        {
            "n": n,
            "m": m,
            "s": s,
            "depth": depth,
            "min_factor": min_factor,
            "worst_case_factor": 1.0 - (n + 1) / (m + 1),
            "hypothesis_violated": not m > 2 * n + 1,
        },
        status,
        witness,
        count,
        bits,
    )


def _probe_digits(alpha: int) -> tuple[int, ...]:
    # extremes of the q'/q ratio range: smallest admissible digits push the
    # ratio toward 1/alpha, large ones toward 0
    return tuple(sorted({alpha, alpha + 1, 2 * alpha, 10 * alpha}))


def _probe_words(alpha: int, depth: int) -> Iterator[tuple[int, ...]]:
    digits = _probe_digits(alpha)
    stack: list[tuple[int, ...]] = [()]
    while stack:
        word = stack.pop(0)
        yield word
        if len(word) < depth:
            stack.extend(word + (d,) for d in digits)


def verify_good_children(
    n: int,
    alpha: int,
    s: float,
    depth: int,
    cutoff: int = 100_000,
    bits: int | None = None,
) -> ConditionCertificate:
    """Check the infinite-children inequality for digit windows >= alpha:

        sum_{k>=alpha} |I(w,k)|^s  <=  (1+n)^s (sum_{k>=alpha} k^(-2s)) |I(w)|^s.

    Both infinite sums are bracketed: children up to ``cutoff`` enter
    exactly, the left tail is bounded above via |I(w,k)| <= n^(l+1)/(k q)^2,
    and the right digit-power tail uses its certified lower bracket.  PASS
    means the certified upper bound of the left side is at most the
    certified lower bound of the right side on every probe prefix.

    Prefixes range over all words up to ``depth`` drawn from a small probe
    set of extreme digits (recorded in the certificate parameters).
    """
    if alpha < n:
        raise DomainError(f"alpha must be >= parameter {n}, got {alpha}")
    if depth < 0:
        raise DomainError(f"depth must be >= 0, got {depth}")
    if cutoff < alpha:
        raise DomainError(f"cutoff {cutoff} must be >= alpha {alpha}")
    bits = _verify_bits(bits)
    right_tail = tail_bracket(alpha, s, cutoff)  # raises DivergenceError for s <= 1/2
    t = 2.0 * s - 1.0
    left_tail_powers = cutoff ** (-t) / t
    log_n = math.log(n)
    k_row = np.arange(alpha, cutoff + 1, dtype=np.float64)
    count = 0
    witness: tuple[int, ...] | None = None
    for digits in _probe_words(alpha, depth):
        count += 1
        word = DigitWord(n, digits)
        level = len(digits)
        q_curr, q_prev = 1, 0
        for d in digits:
            q_curr, q_prev = d * q_curr + n * q_prev, q_curr
        if q_curr >= 2**53:
            raise DomainError("probe prefix denominators exceed exact float64 range")
        parent_log = level * log_n - math.log(q_curr) - math.log(q_curr + q_prev)
        q_child = k_row * q_curr + n * q_prev
        child_log = (level + 1) * log_n - np.log(q_child) - np.log(q_child + q_curr)
        lhs_exact = float(np.sum(np.exp(s * child_log)))
        lhs_tail = math.exp(s * ((level + 1) * log_n - 2.0 * math.log(q_curr))) * left_tail_powers
        lhs_upper = lhs_exact + lhs_tail
        rhs_lower = (1 + n) ** s * right_tail.low * math.exp(s * parent_log)
        if lhs_upper > rhs_lower - _FAST_REL_MARGIN * max(lhs_upper, rhs_lower):
            # escalate: recompute the exact child part and the comparison at
            # high precision; the tail bounds are already one-sided
            parent = interval_length(word) if digits else Fraction(1)
            with mp.workprec(bits):
                exponent = mp.mpf(s)
                lhs_hp = mp.fsum(
                    _mpf_pow(
                        Fraction(
                            n ** (level + 1),
                            (k * q_curr + n * q_prev)
                            * (k * q_curr + n * q_prev + q_curr),
                        ),
                        exponent,
                    )
                    for k in range(alpha, cutoff + 1)
                )
                lhs_hp += mp.mpf(lhs_tail)
                rhs_hp = (
                    mp.power(1 + n, exponent)
                    * mp.mpf(right_tail.low)
                    * _mpf_pow(parent, exponent)
                )
                sign = _abstention_compare(lhs_hp, rhs_hp, "good children inequality")
            if sign > 0:
                witness = digits
                break
    status = "PASS" if witness is None else "FAIL"
    return ConditionCertificate(
        ConditionId.GOOD_CHILDREN,
        {
            "n": n,
            "alpha": alpha,
            "s": s,
            "depth": depth,
            "cutoff": cutoff,
            "probe_digits": list(_probe_digits(alpha)),
        },
        status,
        witness,
        count,
        bits,
    )


def check_growth_values(n: int, q_values: list[int]) -> int | None:
    """Index of the first growth violation in q_0, q_1, ..., or None.

    Checks q_l >= n q_{l-1}, q_l >= n^l, and q_l^2 >= (2n)^(l-1) for l >= 1,
    all in exact integer arithmetic.
    """
    for level in range(1, len(q_values)):
        q = q_values[level]
        if q < n * q_values[level - 1]:
            return level
        if q < n**level:
            return level
        if q * q < (2 * n) ** (level - 1):
            return level
    return None


def verify_growth(n: int, depth: int, max_digit: int) -> ConditionCertificate:
    """Exhaustive denominator growth check over all words up to ``depth``.

    Verifies q_l >= n q_{l-1}, q_l >= n^l and q_l^2 >= (2n)^(l-1) for every
    admissible word with digits in [n, max_digit], in exact integer
    arithmetic (the square-root form uses an integer isqrt threshold).
    """
    if depth < 1:
        raise DomainError(f"depth must be >= 1, got {depth}")
    if max_digit < n:
        raise DomainError(f"max_digit {max_digit} must be >= parameter {n}")
    base = max_digit - n + 1
    count = 0
    witness: tuple[int, ...] | None = None
    for level, q_curr, q_prev in _prefix_levels(n, n, max_digit, depth):
        if level == 0:
            continue
        count += q_curr.size
        # q^2 >= (2n)^(l-1)  <=>  q >= isqrt((2n)^(l-1) - 1) + 1, exactly
        sqrt_bound = math.isqrt((2 * n) ** (level - 1) - 1) + 1
        bad = (
            (q_curr < n * q_prev)
            | (q_curr < n**level)
            | (q_curr < sqrt_bound)
        )
        if bad.any():
            witness = _decode_word(int(np.nonzero(bad)[0][0]), level, n, base)
            break
    status = "PASS" if witness is None else "FAIL"
    return ConditionCertificate(
        ConditionId.GROWTH_LEMMA,
        {"n": n, "depth": depth, "max_digit": max_digit},
        status,
        witness,
        count,
        precision_bits(default=VERIFY_PRECISION_BITS),
    )


def verify_telescoping(n: int, depth: int, max_digit: int, m_end: int) -> ConditionCertificate:
    """Exact telescoped-sum identity over all prefixes up to ``depth``.

    ``telescoping_sum`` raises if the summed and closed forms ever differ,
    so a completed enumeration is itself the certificate.
    """
    if depth < 0:
        raise DomainError(f"depth must be >= 0, got {depth}")
    if max_digit < n:
        raise DomainError(f"max_digit {max_digit} must be >= parameter {n}")
    base = max_digit - n + 1
    count = 0
    stack: list[DigitWord] = [DigitWord(n)]
    while stack:
        word = stack.pop(0)
        telescoping_sum(word, m_end)
        count += 1
        if len(word) < depth:
            stack.extend(word.extend(d) for d in range(n, max_digit + 1))
    return ConditionCertificate(
        ConditionId.TELESCOPE_4_6,
        {"n": n, "depth": depth, "max_digit": max_digit, "m_end": m_end},
        "PASS",
        None,
        count,
        precision_bits(default=VERIFY_PRECISION_BITS),
    )


def _ratio_extreme(n: int, m: int, s: float, depth: int, take_min: bool) -> float:
    """Extreme over prefixes of (children sum)/(parent) at exponent s."""
    extreme = math.inf if take_min else -math.inf
    log_n = math.log(n)
    k_row = np.arange(n, m + 1, dtype=np.int64)
    for level, q_curr, q_prev in _prefix_levels(n, n, m, depth - 1):
        parent_log = (
            level * log_n
            - np.log(q_curr.astype(np.float64))
            - np.log((q_curr + q_prev).astype(np.float64))
        )
        q_child = q_curr[:, None] * k_row[None, :] + n * q_prev[:, None]
        child_log = (
            (level + 1) * log_n
            - np.log(q_child.astype(np.float64))
            - np.log((q_child + q_curr[:, None]).astype(np.float64))
        )
        ratio = np.exp(s * child_log).sum(axis=1) / np.exp(s * parent_log)
        value = float(ratio.min() if take_min else ratio.max())
        extreme = min(extreme, value) if take_min else max(extreme, value)
    return extreme


def condition_threshold(
    n: int, m: int, depth: int, condition: str, s_tol: float = 1e-6
) -> float:
    """Exponent where the exhaustive mass ('mass') or covering ('cover')
    condition flips between PASS and FAIL at this depth, by bisection.

    The mass condition passes for s below the returned value, the covering
    condition for s above it; the dimension of the digit window lies
    between the two thresholds.
    """
    if condition not in ("mass", "cover"):
        raise DomainError(f"condition must be 'mass' or 'cover', got {condition!r}")
    take_min = condition == "mass"
    lo, hi = 0.0, 1.0
    while hi - lo > s_tol:
        mid = 0.5 * (lo + hi)
        value = _ratio_extreme(n, m, mid, depth, take_min)
        if value > 1.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
