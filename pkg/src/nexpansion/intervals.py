"""Exact geometry of fundamental intervals.

The fundamental interval of a digit word (e_1, ..., e_m) is the set of
points whose expansion starts with exactly those digits.  Its endpoints are
the convergent p_m/q_m and the mediant (p_m+p_{m-1})/(q_m+q_{m-1}); the
orientation and which endpoint is included alternate with the parity of m.
The exact length is n^m / (q_m (q_m + q_{m-1})).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import AdmissibilityError, DomainError
from .expansion import DigitWord, convergents, denominator_pair

__all__ = [
    "FundamentalInterval",
    "check_ratio_bounds",
    "check_two_sided_bounds",
    "contains_interval",
    "fundamental_interval",
    "interval_length",
    "intervals_disjoint",
    "telescoping_sum",
]


@dataclass(frozen=True)
class FundamentalInterval:
    """An interval with exact rational endpoints and per-end closure flags."""

    word: DigitWord
    left: Fraction
    right: Fraction
    closed_left: bool
    closed_right: bool
    length: Fraction


def fundamental_interval(word: DigitWord) -> FundamentalInterval:
    """Exact endpoints of the fundamental interval of a non-empty word.

    Even order: [p/q, mediant); odd order: (mediant, p/q].
    """
    m = len(word)
    if m == 0:
        raise AdmissibilityError("fundamental interval requires a non-empty word")
    cs = convergents(word)
    p, q = cs[-1].p, cs[-1].q
    pp, qp = cs[-2].p, cs[-2].q
    vertex = Fraction(p, q)
    mediant = Fraction(p + pp, q + qp)
    if m % 2 == 0:
        left, right = vertex, mediant
        closed_left, closed_right = True, False
    else:
        left, right = mediant, vertex
        closed_left, closed_right = False, True
    return FundamentalInterval(word, left, right, closed_left, closed_right, right - left)


def interval_length(word: DigitWord) -> Fraction:
    """Exact length n^m / (q_m (q_m + q_{m-1})) of the order-m interval."""
    m = len(word)
    if m == 0:
        raise AdmissibilityError("interval length requires a non-empty word")
    q, q_prev = denominator_pair(word)
    return Fraction(word.n**m, q * (q + q_prev))


def check_two_sided_bounds(word: DigitWord) -> bool:
    """True iff n^{m+1}/((1+n) q_m^2) <= |I_m| <= n^m / q_m^2 exactly."""
    m = len(word)
    if m == 0:
        raise AdmissibilityError("two-sided bounds require a non-empty word")
    n = word.n
    q, _ = denominator_pair(word)
    length = interval_length(word)
    lower = Fraction(n ** (m + 1), (1 + n) * q * q)
    upper = Fraction(n**m, q * q)
    return lower <= length <= upper


def check_ratio_bounds(parent: DigitWord, k: int) -> bool:
    """True iff n/(3k^2) <= |I(parent,k)| / |I(parent)| <= 2n/k^2 exactly.

    The empty parent is allowed; its interval is (0,1) with length 1.
    """
    n = parent.n
    if k < n:
        raise AdmissibilityError(f"child digit {k} is below the parameter {n}")
    parent_length = interval_length(parent) if len(parent) else Fraction(1)
    ratio = interval_length(parent.extend(k)) / parent_length
    return Fraction(n, 3 * k * k) <= ratio <= Fraction(2 * n, k * k)


def telescoping_sum(prefix: DigitWord, m: int) -> Fraction:
    """Exact sum of child interval denominatored terms for digits n..m.

    With (a, b) = (q_last, q_prev) of the prefix, returns

        sum_{k=n}^{m} 1 / ((k a + n b)((k+1) a + n b))

    and cross-checks it against the closed telescoped form
    (1/a)[1/(n a + n b) - 1/((m+1) a + n b)] before returning.
    """
    n = prefix.n
    if m < n:
        raise DomainError(f"digit range end {m} must be >= parameter {n}")
    a, b = denominator_pair(prefix)
    summed = sum(
        (Fraction(1, (k * a + n * b) * ((k + 1) * a + n * b)) for k in range(n, m + 1)),
        start=Fraction(0),
    )
    closed = Fraction(1, a) * (Fraction(1, n * a + n * b) - Fraction(1, (m + 1) * a + n * b))
    if summed != closed:
        raise ArithmeticError("telescoping identity failed; convergents are corrupt")
    return summed


def contains_interval(outer: FundamentalInterval, inner: FundamentalInterval) -> bool:
    """Hull containment: inner's endpoint values lie within outer's.

    Closure flags are ignored here on purpose: the sets of interest contain
    no rationals, so endpoint membership carries no content.
    """
    return outer.left <= inner.left and inner.right <= outer.right


def _endpoint_member(interval: FundamentalInterval, point: Fraction) -> bool:
    if point == interval.left:
        return interval.closed_left
    if point == interval.right:
        return interval.closed_right
    return interval.left < point < interval.right


def intervals_disjoint(a: FundamentalInterval, b: FundamentalInterval) -> bool:
    """Exact disjointness honoring the per-end closure flags."""
    lo = max(a.left, b.left)
    hi = min(a.right, b.right)
    if lo > hi:
        return True
    if lo < hi:
        return False
    return not (_endpoint_member(a, lo) and _endpoint_member(b, lo))
