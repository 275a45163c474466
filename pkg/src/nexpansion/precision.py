"""Working-precision control for the transcendental parts of the package.

Exact integer/rational arithmetic never goes through here.  Closed-form
bound evaluation and certified power comparisons use mpmath at a precision
configurable through the ``NEXP_PRECISION_BITS`` environment variable.
"""

from __future__ import annotations

import os
from contextlib import contextmanager

from mpmath import mp

from .errors import DomainError

ENV_VAR = "NEXP_PRECISION_BITS"

# Defaults: bound calculators need >= 64 mantissa bits, certified verifier
# comparisons need >= 128.  Both may be raised via the environment.
BOUND_PRECISION_BITS = 128
VERIFY_PRECISION_BITS = 192

# Relative distance below which a certified comparison abstains.
ABSTENTION_MARGIN_EXP = -96


def precision_bits(default: int = BOUND_PRECISION_BITS) -> int:
    """Resolve the working precision, honoring the environment override."""
    raw = os.environ.get(ENV_VAR)
    if raw is None:
        return default
    try:
        bits = int(raw)
    except ValueError as exc:
        raise DomainError(f"{ENV_VAR} must be an integer, got {raw!r}") from exc
    if bits < 53:
        raise DomainError(f"{ENV_VAR} must be >= 53, got {bits}")
    return max(bits, default)


@contextmanager
def working_precision(bits: int | None = None, default: int = BOUND_PRECISION_BITS):
    """Context manager running mpmath at the resolved precision."""
    with mp.workprec(bits if bits is not None else precision_bits(default)):
        yield mp
