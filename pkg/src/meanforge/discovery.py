"""Coefficient comparison: find the M0 expansions for which S and sigma agree.

At step n the coefficients ``c_1 = c, c_2, ..., c_{n-1}`` are already known
and ``c_n`` is a fresh unknown ``u``.  The difference ``b_{n+1}^S -
b_{n+1}^sigma`` must vanish for every M1, i.e. as a polynomial in the
symbolic ``a_m``.  It is linear in ``u`` and carries the factor
``(a_1 - c)^2``; removing that factor and solving for ``u`` gives ``c_n``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from ._numeric import mp_precision

from .means import catalan, lc_coefficient
from .poly import NotDivisible, Poly, SymbolTable
from .series import MeanSeries
from .symseries import bS_coeffs, bSigma_coeffs, symbolic_series

__all__ = [
    "DiscoveryError",
    "NotLinear",
    "NotUniversal",
    "NotDivisible",
    "StepRecord",
    "DiscoveryState",
    "discovery_table",
    "run_discovery",
    "check_hypothesis",
    "catalan_gf_check",
    "catalan_gf_partial",
]


class DiscoveryError(ArithmeticError):
    """Structural failure of a comparison step."""


class NotLinear(DiscoveryError):
    """The step condition is not of degree exactly one in the unknown."""


class NotUniversal(DiscoveryError):
    """The solved coefficient depends on the coefficients of M1."""


@dataclass(frozen=True)
class StepRecord:
    n: int
    difference: Poly
    reduced: Poly  # difference / (a1 - c)^2
    solved: Poly

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "difference": str(self.difference),
            "divisor": "(a1 - c)^2",
            "reduced": str(self.reduced),
            "solved": str(self.solved),
        }


@dataclass
class DiscoveryState:
    order: int
    table: SymbolTable
    solved: list = field(default_factory=list)
    log: list = field(default_factory=list)

    def solved_in_c(self) -> list[Poly]:
        """The solved coefficients over the one-symbol table ``['c']``."""
        small = SymbolTable(["c"])
        return [_restrict(p, small) for p in self.solved]


def _restrict(p: Poly, table: SymbolTable) -> Poly:
    out = {}
    names = p.table.names
    for exps, v in p.terms.items():
        sub = [0] * len(table)
        for name, e in zip(names, exps):
            if e:
                sub[table.index(name)] = e
        out[tuple(sub)] = v
    return Poly(table, out)


def discovery_table(order: int) -> SymbolTable:
    return SymbolTable(["c"] + [f"a{i}" for i in range(1, order + 2)] + ["u"])


def run_discovery(order: int) -> DiscoveryState:
    """Determine ``c_2 .. c_order`` by equating the two symmetric expansions."""
    if order < 2:
        raise ValueError("discovery needs order >= 2")
    table = discovery_table(order)
    c, a1, u = table["c"], table["a1"], table["u"]
    factor = (a1 - c) ** 2
    m1 = symbolic_series(table, "a", order + 1)
    state = DiscoveryState(order=order, table=table, solved=[Poly.const(table, 1), c])

    for n in range(2, order + 1):
        # c_{n+1} enters both b_{n+1} only as 2 c_{n+1}; it cancels, so 0 stands in
        m0 = MeanSeries(state.solved + [u, Poly.zero(table)])
        diff = bS_coeffs(m0, m1, n + 1)[n + 1] - bSigma_coeffs(m0, m1, n + 1)[n + 1]
        if diff.degree("u") != 1:
            raise NotLinear(f"step {n}: condition has degree {diff.degree('u')} in the unknown")
        try:
            reduced = diff.exact_div(factor)
        except NotDivisible as exc:
            raise NotDivisible(f"step {n}: condition lacks the factor (a1 - c)^2") from exc
        slope, rest = reduced.coeff("u", 1), reduced.coeff("u", 0)
        value = -(rest.exact_div(slope))
        if value.free_symbols() - {"c"}:
            raise NotUniversal(f"step {n}: solution {value} depends on M1")
        state.log.append(StepRecord(n, diff, reduced, value))
        state.solved.append(value)
    return state


def check_hypothesis(state: DiscoveryState) -> bool:
    """True iff every solved c_n equals ``(-1)^(n-1) C_{n-1} c^n (1+c)^(n-1)``."""
    c = state.table["c"]
    if len(state.solved) != state.order + 1:
        return False
    return all(p == lc_coefficient(c, n) for n, p in enumerate(state.solved))


def catalan_gf_partial(y, N: int) -> Fraction:
    y = Fraction(y)
    return sum((catalan(n) * y**n for n in range(N + 1)), Fraction(0))


def catalan_gf_check(N: int, y0, dps: int = 60) -> bool:
    """Partial sum of ``sum C_n y^n`` against ``(1 - sqrt(1 - 4y)) / (2y)``.

    The tail beyond N is at most ``(4|y|)^(N+1) / (1 - 4|y|)``.
    """
    y0 = Fraction(y0)
    if abs(y0) >= Fraction(1, 4):
        raise ValueError("the generating function converges only for |y| < 1/4")
    partial = catalan_gf_partial(y0, N)
    bound = (4 * abs(y0)) ** (N + 1) / (1 - 4 * abs(y0))
    with mp_precision(dps):
        if y0 == 0:
            closed = mpmath.mpf(1)
        else:
            y = mpmath.mpf(y0.numerator) / y0.denominator
            closed = (1 - mpmath.sqrt(1 - 4 * y)) / (2 * y)
        p = mpmath.mpf(partial.numerator) / partial.denominator
        return bool(abs(p - closed) <= mpmath.mpf(bound.numerator) / bound.denominator)
