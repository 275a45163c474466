"""Exact arithmetic for N-expansion continued fractions.

For a fixed integer parameter n >= 1, a number x in (0,1) expands as

    x = n/(e1 + n/(e2 + n/(e3 + ...)))

with integer digits e_i >= n, generated by iterating x -> n/x - floor(n/x).
Everything in this module is exact: inputs are `fractions.Fraction`, the
convergent numerators/denominators are arbitrary-precision integers, and a
rational input always reaches 0 after finitely many steps.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Sequence

from .errors import AdmissibilityError, DomainError

__all__ = [
    "ConvergentPair",
    "DigitWord",
    "apply_map",
    "check_determinant",
    "convergents",
    "denominator_pair",
    "digits_of",
    "evaluate",
]


def _check_parameter(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"expansion parameter must be an integer >= 1, got {n!r}")


@dataclass(frozen=True)
class ConvergentPair:
    """Convergent numerator/denominator (p_k, q_k) at index k."""

    index: int
    p: int
    q: int


@dataclass(frozen=True)
class DigitWord:
    """A finite admissible digit sequence for a fixed expansion parameter.

    `terminated` records that the generating orbit hit 0 exactly, i.e. the
    word is the complete expansion of a rational; it stays False for words
    built by hand or truncated at a digit budget.
    """

    n: int
    digits: tuple[int, ...] = ()
    terminated: bool = False

    def __post_init__(self) -> None:
        _check_parameter(self.n)
        object.__setattr__(self, "digits", tuple(self.digits))
        for d in self.digits:
            if not isinstance(d, int) or d < self.n:
                raise AdmissibilityError(
                    f"digit {d!r} is inadmissible for parameter {self.n}"
                )

    def __len__(self) -> int:
        return len(self.digits)

    def extend(self, digit: int) -> "DigitWord":
        """Child word obtained by appending one digit."""
        return DigitWord(self.n, self.digits + (digit,))

    def prefix(self, length: int) -> "DigitWord":
        return DigitWord(self.n, self.digits[:length])


def apply_map(n: int, x: Fraction) -> tuple[int | None, Fraction]:
    """One exact step of the expansion map on [0,1].

    Returns ``(digit, next_x)``.  ``digit`` is ``None`` when x == 0 (the
    orbit has terminated and stays at 0); otherwise digit = floor(n/x) >= n
    and next_x = n/x - digit lies in [0,1).
    """
    _check_parameter(n)
    x = Fraction(x)
    if x < 0 or x > 1:
        raise DomainError(f"expansion map is defined on [0,1], got {x}")
    if x == 0:
        return None, Fraction(0)
    ratio = Fraction(n) / x
    digit = floor(ratio)
    return digit, ratio - digit


def digits_of(n: int, x: Fraction, max_digits: int) -> DigitWord:
    """Greedy digit extraction from a rational x in (0,1).

    Stops early with ``terminated=True`` when the orbit reaches 0; otherwise
    truncates after ``max_digits`` digits with ``terminated=False``.
    """
    if max_digits < 1:
        raise DomainError(f"max_digits must be >= 1, got {max_digits}")
    x = Fraction(x)
    if not 0 < x < 1:
        raise DomainError(f"digit extraction requires 0 < x < 1, got {x}")
    digits: list[int] = []
    terminated = False
    for _ in range(max_digits):
        digit, x = apply_map(n, x)
        assert digit is not None  # x > 0 on entry to every iteration
        digits.append(digit)
        if x == 0:
            terminated = True
            break
    return DigitWord(n, tuple(digits), terminated)


def convergents(word: DigitWord) -> list[ConvergentPair]:
    """Exact convergents (p_k, q_k) for k = 0..len(word).

    Seeds are p_{-1}=1, q_{-1}=0, p_0=0, q_0=1 and the recurrences are
    p_k = e_k p_{k-1} + n p_{k-2}, q_k = e_k q_{k-1} + n q_{k-2}.
    """
    n = word.n
    p_prev, q_prev = 1, 0
    p, q = 0, 1
    out = [ConvergentPair(0, 0, 1)]
    for k, digit in enumerate(word.digits, start=1):
        p, p_prev = digit * p + n * p_prev, p
        q, q_prev = digit * q + n * q_prev, q
        out.append(ConvergentPair(k, p, q))
    return out


def denominator_pair(word: DigitWord) -> tuple[int, int]:
    """(q_m, q_{m-1}) for m = len(word), with the convention q_{-1} = 0."""
    n = word.n
    q_prev, q = 0, 1
    for digit in word.digits:
        q, q_prev = digit * q + n * q_prev, q
    return q, q_prev


def evaluate(word: DigitWord) -> Fraction:
    """Exact value of the finite expansion [e_1, ..., e_m]."""
    if len(word) == 0:
        raise AdmissibilityError("cannot evaluate an empty digit word")
    value = Fraction(0)
    for digit in reversed(word.digits):
        value = Fraction(word.n) / (digit + value)
    return value


def check_determinant(pairs: Sequence[ConvergentPair], n: int) -> bool:
    """True iff p_{k-1} q_k - p_k q_{k-1} == (-n)^k for all k >= 1."""
    _check_parameter(n)
    sign = 1
    power = 1
    for prev, cur in zip(pairs, pairs[1:]):
        sign = -sign
        power *= n
        if prev.p * cur.q - cur.p * prev.q != sign * power:
            return False
    return True
