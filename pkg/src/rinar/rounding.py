"""Nearest-integer rounding with half-integers rounded away from zero.

Every piece of model arithmetic funnels through this module so the tie and
sign conventions live in exactly one place:

    round_nearest(2.5)  ->  3      round_nearest(-0.5) -> -1
    frac_part(-1.23)    ->  0.23   int_part(-6.3)      -> -6
    sign(0.0)           ->  1

For any finite double a >= 0, floor(a) is representable and a - floor(a)
is computed without rounding error (Sterbenz), so the tie test
``a - floor(a) >= 0.5`` is bit-exact.  A value counts as a half-integer
only when its binary representation equals k + 0.5 exactly; there is no
epsilon band.
"""

import math

import numpy as np

__all__ = ["round_nearest", "round_nearest_array", "frac_part", "int_part", "sign"]


def _require_finite(x) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"expected a finite real number, got {x!r}")
    return x


def round_nearest(x) -> int:
    """Round to the nearest integer, ties away from zero."""
    x = _require_finite(x)
    a = abs(x)
    f = math.floor(a)
    n = f + 1 if a - f >= 0.5 else f
    return n if x >= 0 else -n


def round_nearest_array(values) -> np.ndarray:
    """Vectorised round_nearest; returns a float64 array of integral values."""
    z = np.asarray(values, dtype=float)
    if not np.all(np.isfinite(z)):
        raise ValueError("expected finite real numbers")
    a = np.abs(z)
    f = np.floor(a)
    n = np.where(a - f >= 0.5, f + 1.0, f)
    return np.where(z < 0, -n, n)


def frac_part(x) -> float:
    """Fractional part of the absolute value, in [0, 1).

    frac_part(-1.23) == frac_part(1.23) == 0.23.
    """
    x = _require_finite(x)
    a = abs(x)
    return a - math.floor(a)


def int_part(x) -> int:
    """Integer part by truncation toward zero: int_part(-6.3) == -6."""
    x = _require_finite(x)
    return math.trunc(x)


def sign(x) -> int:
    """+1 for x >= 0, -1 for x < 0."""
    x = _require_finite(x)
    return 1 if x >= 0 else -1
