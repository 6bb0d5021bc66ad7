"""Closed-form means, their expansion coefficients and Catalan utilities."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Union

import mpmath
import numpy as np

from . import _numeric as nx
from .poly import Poly, SymbolTable
from .series import MeanSeries

__all__ = [
    "NumericMean",
    "DomainError",
    "ARITHMETIC",
    "GEOMETRIC",
    "HARMONIC",
    "catalan",
    "lc_eval",
    "lc_mean",
    "lc_series",
    "lc_coefficient",
    "classic_series",
    "lc_limit_checks",
    "LimitReport",
    "lc_truncation_error",
    "parse_mean",
]

Number = Union[float, np.ndarray]


class DomainError(ValueError):
    """Non-positive arguments or a parameter outside the admissible range."""


@dataclass(frozen=True)
class NumericMean:
    """A bivariate mean ``(a, b) -> M(a, b)`` on the positive quadrant.

    Evaluators accept numpy arrays as well as float or ``mpmath.mpf`` scalars.
    """

    func: Callable
    name: str
    symmetric: bool = True
    homogeneous: bool = True
    strict: bool = True

    def __call__(self, a, b):
        return self.func(a, b)

    def __repr__(self) -> str:
        return f"NumericMean({self.name})"


def _check_domain(a, b) -> None:
    if np.any(np.asarray(a) <= 0) or np.any(np.asarray(b) <= 0):
        raise DomainError("means are defined for positive arguments only")


def _on_diagonal(a, b, value):
    # every mean equals its argument on the diagonal; return it exactly
    if isinstance(value, np.ndarray) or isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
        return np.where(np.asarray(a) == np.asarray(b), a, value)
    return a if a == b else value


def _arithmetic(a, b):
    return (a + b) / 2


def _geometric(a, b):
    return _on_diagonal(a, b, nx.sqrt(a * b))


def _harmonic(a, b):
    return _on_diagonal(a, b, 2 * a * b / (a + b))


ARITHMETIC = NumericMean(_arithmetic, "A")
GEOMETRIC = NumericMean(_geometric, "G")
HARMONIC = NumericMean(_harmonic, "H")


def catalan(n: int) -> int:
    """The n-th Catalan number ``binom(2n, n) / (n + 1)``."""
    if n < 0:
        raise ValueError("Catalan numbers are indexed from 0")
    return math.comb(2 * n, n) // (n + 1)


# ---------------------------------------------------------------------------
# the L_c family


def _lc_raw(c, a, b, upper_root: bool = False):
    """L_c for c != -1.

    For c < -1/2 the sum in the closed form cancels, so the algebraically
    equal form ``-4abc / (R - (1+2c)(a+b))`` is used instead, where
    ``R = sqrt((a+b)^2 + 4c(1+c)(b-a)^2)``.  With ``upper_root`` the other
    root of ``2(1+c)L^2 - (a+b)(1+2c)L + 2abc`` is returned; it is the branch
    that continues the family for c < -1 with limits max(a,b) at -inf and
    +inf at -1 from the left.
    """
    c = nx.as_like(c, a)
    s = a + b
    d = b - a
    rad = s * s + 4 * c * (1 + c) * d * d
    if not nx.is_mp(rad):
        floor = -1e-13 * s * s
        if np.any(rad < floor):
            raise DomainError("negative radicand: parameter outside the mean range")
        rad = np.maximum(rad, 0.0) if isinstance(rad, np.ndarray) else max(rad, 0.0)
    R = nx.sqrt(rad)
    k = 1 + 2 * c
    if upper_root:
        return (k * s - R) / (4 * (1 + c))
    if k < 0:
        return -4 * c * a * b / (R - k * s)
    return (k * s + R) / (4 * (1 + c))


def lc_eval(c, a, b):
    """Evaluate L_c(a, b) for c >= -1; c = -1 is the harmonic mean."""
    if c < -1:
        raise DomainError(f"L_c is a mean only for c >= -1, got c={c}")
    _check_domain(a, b)
    if c == -1:
        return _harmonic(a, b)
    return _on_diagonal(a, b, _lc_raw(c, a, b))


def lc_mean(c) -> NumericMean:
    if c < -1:
        raise DomainError(f"L_c is a mean only for c >= -1, got c={c}")
    c = Fraction(repr(c)) if isinstance(c, float) else Fraction(c)
    return NumericMean(lambda a, b: lc_eval(c, a, b), f"L_{c}")


def lc_coefficient(c, n: int):
    """``(-1)^(n-1) C_{n-1} c^n (1+c)^(n-1)``, with the n = 0 term equal to 1."""
    if n == 0:
        return Poly.const(c.table, 1) if isinstance(c, Poly) else Fraction(1)
    sign = -1 if n % 2 == 0 else 1
    return sign * catalan(n - 1) * c**n * (1 + c) ** (n - 1)


def lc_series(c, order: int, table: SymbolTable | None = None) -> MeanSeries:
    """Expansion coefficients of L_c up to ``order``.

    ``c`` may be a rational (numeric series), a :class:`Poly`, or ``None``
    for the symbol ``c`` of ``table`` (default table ``['c']``).
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    if c is None:
        table = table or SymbolTable(["c"])
        c = Poly.var(table, "c")
    elif not isinstance(c, Poly):
        c = Fraction(c)
    return MeanSeries([lc_coefficient(c, n) for n in range(order + 1)])


def classic_series(which: str, order: int) -> MeanSeries:
    """Expansion coefficients of the arithmetic, geometric or harmonic mean."""
    which = which.upper()
    if which == "A":
        coeffs = [Fraction(1)] + [Fraction(0)] * order
    elif which == "H":
        coeffs = [Fraction(1), Fraction(-1)] + [Fraction(0)] * (order - 1)
        coeffs = coeffs[: order + 1]
    elif which == "G":
        coeffs = [Fraction(1)] + [
            Fraction(-catalan(n - 1), 2 ** (2 * n - 1)) for n in range(1, order + 1)
        ]
    else:
        raise KeyError(f"unknown classic mean {which!r}")
    return MeanSeries(coeffs)


# ---------------------------------------------------------------------------
# diagnostics


@dataclass(frozen=True)
class LimitReport:
    a: float
    b: float
    at_plus_infinity: float
    at_minus_infinity: float
    right_of_minus_one: float
    left_of_minus_one: float
    literal_left_of_minus_one: float

    @property
    def tends_to_max(self) -> bool:
        # relative tolerances: the family is homogeneous
        top = max(self.a, self.b)
        return abs(self.at_plus_infinity - top) < 1e-3 * top and abs(self.at_minus_infinity - top) < 1e-3 * top

    @property
    def tends_to_harmonic(self) -> bool:
        h = _harmonic(self.a, self.b)
        return abs(self.right_of_minus_one - h) < 1e-6 * h

    @property
    def blows_up(self) -> bool:
        return self.left_of_minus_one > 1e6 * max(self.a, self.b)

    @property
    def ok(self) -> bool:
        return self.tends_to_max and self.tends_to_harmonic and self.blows_up


def lc_limit_checks(a: float, b: float, big: float = 1e6, eps: float = 1e-8) -> LimitReport:
    """Numeric evidence for the limits of L_c(a, b) in the parameter.

    Parameters below -1 are evaluated on the upper root of the defining
    quadratic (see ``_lc_raw``).  ``literal_left_of_minus_one`` records the
    value of the unmodified closed form just left of -1, which tends to
    H(a, b) instead.
    """
    if a == b or a <= 0 or b <= 0:
        raise DomainError("limit checks need distinct positive arguments")
    a, b = float(a), float(b)
    return LimitReport(
        a=a,
        b=b,
        at_plus_infinity=float(_lc_raw(big, a, b)),
        at_minus_infinity=float(_lc_raw(-big, a, b, upper_root=True)),
        right_of_minus_one=float(_lc_raw(-1 + eps, a, b)),
        left_of_minus_one=float(_lc_raw(-1 - eps, a, b, upper_root=True)),
        literal_left_of_minus_one=float(_lc_raw(-1 - eps, a, b)),
    )


def lc_truncation_error(c, order: int, x, t=1, dps: int = 80) -> mpmath.mpf:
    """``|L_c(x - t, x + t) - partial sum to order|`` evaluated with ``dps`` digits."""
    c = Fraction(c)
    series = lc_series(c, order)
    with nx.mp_precision(dps):
        X = mpmath.mpf(Fraction(x).numerator) / Fraction(x).denominator
        T = mpmath.mpf(Fraction(t).numerator) / Fraction(t).denominator
        exact = lc_eval(c, X - T, X + T)
        return abs(exact - series.evaluate(X, T))


def parse_mean(name: str) -> NumericMean:
    """Resolve a classic mean letter or ``Lc:<value>``."""
    key = name.strip()
    if key.upper() in ("A", "G", "H"):
        return {"A": ARITHMETIC, "G": GEOMETRIC, "H": HARMONIC}[key.upper()]
    if key.startswith(("Lc:", "L:")):
        try:
            value = Fraction(key.split(":", 1)[1])
        except (ValueError, ZeroDivisionError):
            raise KeyError(f"bad parameter in mean name {name!r}") from None
        return lc_mean(value)
    raise KeyError(f"unknown mean name {name!r}")
