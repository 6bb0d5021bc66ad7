"""Expansion coefficients of the two symmetric means S_{M0}(M1) and sigma_{M0}(M1).

Given the expansions ``c_n`` of M0 and ``a_n`` of M1 (both in the form
``sum_n k_n t^(2n) x^(-2n+1)``), ``bS_coeffs`` returns the coefficients of
the group symmetry and ``bSigma_coeffs`` those of the functional symmetry.

For the group symmetry write ``C(y) = sum_n c_{n+1} y^n`` and likewise
``A(y)`` with ``y = t^2/x^2``.  Then

    S - x = (t^2/x) * (2C - A - y C^2 A) / (1 + y C (C - 2A)),

so ``b_{n+1}`` is the n-th coefficient of that quotient.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .poly import Poly, SymbolTable
from .series import (
    MeanSeries,
    SeriesError,
    _Lazy,
    _PowerFamily,
    _composition_tail,
    series_quotient,
)

__all__ = [
    "Z1Violation",
    "SymmetricExpansionPair",
    "bS_coeffs",
    "bSigma_coeffs",
    "symmetric_pair",
    "verify_c2_relation",
    "symbolic_series",
    "make_table",
]


class Z1Violation(SeriesError):
    """a_1 equals c_1, so the composition offset is not 1."""


def make_table(order: int, *, m0: str | None = "c", m1: str = "a", extra: Sequence[str] = ()) -> SymbolTable:
    """Symbol table ``[<m0>1..<m0>N, <m1>1..<m1>N, *extra]``.

    With ``m0="c"`` and no index the single parameter symbol ``c`` is used
    instead (pass ``m0=None`` to omit M0 symbols altogether).
    """
    names: list[str] = []
    if m0:
        names += [f"{m0}{i}" for i in range(1, order + 1)]
    names += [f"{m1}{i}" for i in range(1, order + 1)]
    names += list(extra)
    return SymbolTable(names)


def symbolic_series(table: SymbolTable, prefix: str, order: int) -> MeanSeries:
    """The fully symbolic series ``(1, p1, p2, ..., pN)``."""
    return MeanSeries([Poly.const(table, 1)] + [Poly.var(table, f"{prefix}{i}") for i in range(1, order + 1)])


def _align(M0: MeanSeries, M1: MeanSeries, N: int):
    for s, name in ((M0, "M0"), (M1, "M1")):
        if s.order < N:
            raise SeriesError(f"{name} series has order {s.order}, need {N}")
    if M0.mode != M1.mode:
        table = M0.table or M1.table
        M0, M1 = M0.promote(table), M1.promote(table)
    return M0.coeffs, M1.coeffs, M0.table


def bS_coeffs(M0: MeanSeries, M1: MeanSeries, N: int) -> MeanSeries:
    """Coefficients ``b_0 .. b_N`` of the group symmetry ``S_{M0}(M1)``."""
    c, a, table = _align(M0, M1, N)
    if N == 0:
        return MeanSeries(c[:1])
    # C^2 coefficients: sq[k] = sum_j c_{j+1} c_{k-j+1}
    sq = [sum((c[j + 1] * c[k - j + 1] for j in range(k + 1)), 0) for k in range(N - 1)]
    num = []
    den = [1]
    for n in range(N):
        v = 2 * c[n + 1] - a[n + 1]
        for k in range(n):
            v = v - sq[k] * a[n - k]
        num.append(v)
        if n:
            den.append(sum((c[k + 1] * (c[n - k] - 2 * a[n - k]) for k in range(n)), 0))
    if table is not None:
        num = [x if isinstance(x, Poly) else Poly.const(table, x) for x in num]
        den = [x if isinstance(x, Poly) else Poly.const(table, x) for x in den]
    q = series_quotient(num, den, N - 1)
    return MeanSeries([c[0]] + list(q.coeffs))


def bSigma_coeffs(M0: MeanSeries, M1: MeanSeries, N: int) -> MeanSeries:
    """Coefficients ``b_0 .. b_N`` of the functional symmetry ``sigma_{M0}(M1)``.

    Stage n of the composition recursion for ``M0(M1, M2) = M0`` contains
    ``b_n`` only through the k = j = 0 term ``(a_n + b_n)/2``; every other
    term involves ``b_1 .. b_{n-1}``.  So ``b_n = 2 (c_n - R_n) - a_n`` with
    ``R_n`` the k >= 1 part of the recursion.
    """
    c, a, table = _align(M0, M1, N)
    if N >= 1 and not (a[1] - c[1]):
        raise Z1Violation("a_1 - c_1 vanishes; the first-order difference is zero")
    b: list = [c[0]]
    half = Fraction(1, 2)
    mean = _Lazy(lambda m: (a[m] + b[m]) * half)
    diff = _Lazy(lambda m: (a[m + 1] - b[m + 1]) * half)
    dpows = _PowerFamily(diff, lambda k: 2 * k)
    cpows = _PowerFamily(mean, lambda k: 1 - 2 * k)
    for n in range(1, N + 1):
        rest = _composition_tail(c, dpows, cpows, n, 1, 1)
        b.append(2 * (c[n] - rest) - a[n])
    return MeanSeries(b, table=table)


@dataclass(frozen=True)
class SymmetricExpansionPair:
    m0: MeanSeries
    m1: MeanSeries
    bS: MeanSeries
    bSigma: MeanSeries

    @property
    def order(self) -> int:
        return self.bS.order

    def differences(self) -> list:
        return [s - g for s, g in zip(self.bS.coeffs, self.bSigma.coeffs)]


def symmetric_pair(M0: MeanSeries, M1: MeanSeries, N: int) -> SymmetricExpansionPair:
    return SymmetricExpansionPair(M0, M1, bS_coeffs(M0, M1, N), bSigma_coeffs(M0, M1, N))


def verify_c2_relation(a: Sequence, b: Sequence, c: Sequence) -> bool:
    """Check ``c_2 = (a_2 + b_2)/2 + (a_1 - b_1)^2 c_1 / 4`` exactly."""
    if min(len(a), len(b), len(c)) < 3:
        raise ValueError("need coefficients up to index 2")
    rhs = (a[2] + b[2]) * Fraction(1, 2) + (a[1] - b[1]) ** 2 * c[1] * Fraction(1, 4)
    return not (c[2] - rhs)
