"""Scalar helpers shared by the numeric modules.

Numeric paths run in double precision.  They also accept ``mpmath.mpf``
inputs so that truncation-level comparisons against series can be made at
high precision; these helpers keep constants in the caller's number type.
"""

from __future__ import annotations

import threading
from contextlib import contextmanager
from fractions import Fraction

import mpmath
import numpy as np


_MP_LOCK = threading.RLock()


@contextmanager
def mp_precision(dps: int):
    """``mpmath.workdps`` guarded by a lock; mpmath precision is process-global."""
    with _MP_LOCK, mpmath.workdps(dps):
        yield


def is_mp(x) -> bool:
    if isinstance(x, mpmath.mpf):
        return True
    return isinstance(x, np.ndarray) and x.dtype == object


def as_like(q, like):
    """Convert an exact rational (or float) to the number type of ``like``."""
    if isinstance(like, Fraction) and isinstance(q, (int, Fraction)):
        return Fraction(q)
    if is_mp(like):
        if isinstance(q, Fraction):
            return mpmath.mpf(q.numerator) / q.denominator
        return mpmath.mpf(q)
    return float(q)


def sqrt(x):
    if isinstance(x, mpmath.mpf):
        return mpmath.sqrt(x)
    if isinstance(x, np.ndarray) and x.dtype == object:
        return np.array([mpmath.sqrt(v) for v in x.ravel()], dtype=object).reshape(x.shape)
    return np.sqrt(x)


def log(x):
    if isinstance(x, mpmath.mpf):
        return mpmath.log(x)
    return np.log(x)
