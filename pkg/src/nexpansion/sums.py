"""Fast, accurate partial sums of inverse powers.

``power_sum(p, a, b, shift)`` evaluates sum_{k=a}^{b} (k+shift)^(-p) for
real p >= 0.  Short ranges are summed directly with numpy; long ranges use
a direct head plus an Euler-Maclaurin tail whose correction terms decay
like (p/k)^2 per order, giving near machine precision once the tail starts
beyond 10^4.  ``log_power_sum`` returns the logarithm, computed from terms
normalized by the leading one so that no intermediate under- or overflows.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError

# Ranges at most this long are summed term by term.
DIRECT_TERMS = 200_000
# Longer ranges: this many leading terms directly, Euler-Maclaurin beyond.
DIRECT_HEAD = 10_000

_CHUNK = 1 << 20


def _check_args(p: float, a: int, b: int, shift: float) -> None:
    if p < 0:
        raise DomainError(f"exponent must be >= 0, got {p}")
    if a < 1 or b < a:
        raise DomainError(f"invalid summation range [{a}, {b}]")
    if shift < 0:
        raise DomainError(f"shift must be >= 0, got {shift}")


def _direct_scaled(p: float, a: int, b: int, shift: float, log_lead: float) -> float:
    """sum over [a,b] of exp(-p*log(k+shift) - log_lead), chunked."""
    total = 0.0
    for start in range(a, b + 1, _CHUNK):
        k = np.arange(start, min(start + _CHUNK, b + 1), dtype=np.float64)
        total += float(np.sum(np.exp(-p * np.log(k + shift) - log_lead)))
    return total


def _euler_maclaurin_scaled(p: float, a: int, b: int, shift: float, log_lead: float) -> float:
    """Euler-Maclaurin value of sum_{k=a}^{b} (k+shift)^(-p), scaled by exp(-log_lead)."""
    t0 = a + shift
    t1 = b + shift
    lt0 = math.log(t0)
    lt1 = math.log(t1)
    h0 = math.exp(-p * lt0 - log_lead)
    h1 = math.exp(-p * lt1 - log_lead)
    if p == 1.0:
        integral = (lt1 - lt0) * math.exp(-log_lead)
    else:
        # t0^(1-p) (1 - (t1/t0)^(1-p)) / (p-1), scaled; stable for all p != 1
        integral = t0 * h0 * (-math.expm1((1.0 - p) * (lt1 - lt0))) / (p - 1.0)
    value = integral + 0.5 * (h0 + h1)
    # Bernoulli corrections from odd derivatives of t^-p
    c1 = p
    value += (c1 / 12.0) * (h0 / t0 - h1 / t1)
    c3 = p * (p + 1.0) * (p + 2.0)
    value -= (c3 / 720.0) * (h0 / t0**3 - h1 / t1**3)
    c5 = c3 * (p + 3.0) * (p + 4.0)
    value += (c5 / 30240.0) * (h0 / t0**5 - h1 / t1**5)
    return value


def _scaled_sum(p: float, a: int, b: int, shift: float) -> tuple[float, float]:
    """Return (mantissa, log_lead) with the sum equal to mantissa*exp(log_lead)."""
    log_lead = -p * math.log(a + shift)
    count = b - a + 1
    if count <= DIRECT_TERMS:
        return _direct_scaled(p, a, b, shift, log_lead), log_lead
    head_end = a + DIRECT_HEAD - 1
    mantissa = _direct_scaled(p, a, head_end, shift, log_lead)
    mantissa += _euler_maclaurin_scaled(p, head_end + 1, b, shift, log_lead)
    return mantissa, log_lead


def power_sum(p: float, a: int, b: int, shift: float = 0.0) -> float:
    """sum_{k=a}^{b} (k+shift)^(-p) for real p >= 0."""
    _check_args(p, a, b, shift)
    mantissa, log_lead = _scaled_sum(p, a, b, shift)
    return mantissa * math.exp(log_lead)


def log_power_sum(p: float, a: int, b: int, shift: float = 0.0) -> float:
    """log of sum_{k=a}^{b} (k+shift)^(-p), safe for large p*log(a)."""
    _check_args(p, a, b, shift)
    mantissa, log_lead = _scaled_sum(p, a, b, shift)
    return math.log(mantissa) + log_lead
