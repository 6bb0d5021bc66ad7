"""Truncated asymptotic series and the transformations used on mean expansions.

Two containers are used:

``PlainSeries``
    coefficients of ``sum_n k_n x**-n``.
``MeanSeries``
    coefficients of a symmetric homogeneous mean,
    ``M(x - t, x + t) = sum_n k_n t**(2n) x**(-2n + 1)`` with ``k_0 = 1``.

Coefficients are either exact rationals (numeric mode) or :class:`Poly`
values over one symbol table (symbolic mode).  The algorithms are written
against the ring operations only, so the same code serves both modes.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence, Union

from ._numeric import as_like
from .poly import Poly, SymbolTable

__all__ = [
    "PlainSeries",
    "MeanSeries",
    "SeriesError",
    "series_mul",
    "series_quotient",
    "series_power",
    "series_compose_means",
    "power_coefficient",
]

logger = logging.getLogger(__name__)

Coeff = Union[Fraction, Poly]


class SeriesError(ValueError):
    """Invalid series input, such as a too-short series or a zero leading term."""


def _norm(x, table: SymbolTable | None):
    if isinstance(x, Poly):
        if table is not None and x.table != table:
            raise SeriesError("coefficients live over different symbol tables")
        return x
    if isinstance(x, bool) or not isinstance(x, (int, Fraction)):
        raise SeriesError(f"coefficient {x!r} is neither a rational nor a Poly")
    return Poly.const(table, x) if table is not None else Fraction(x)


def _table_of(coeffs) -> SymbolTable | None:
    for c in coeffs:
        if isinstance(c, Poly):
            return c.table
    return None


def _is_one(x) -> bool:
    return x == 1


def _div_leading(x, lead):
    if _is_one(lead):
        return x
    if isinstance(lead, Poly):
        if not lead.is_constant():
            return x.exact_div(lead) if isinstance(x, Poly) else Poly.const(lead.table, x).exact_div(lead)
        lead = lead.constant_term()
    return x / lead


@dataclass(frozen=True)
class PlainSeries:
    """Truncated ``sum_n k_n x**-n``; coefficients k_0 .. k_N."""

    coeffs: tuple

    def __init__(self, coeffs: Sequence):
        coeffs = tuple(coeffs)
        if not coeffs:
            raise SeriesError("a series needs at least one coefficient")
        table = _table_of(coeffs)
        object.__setattr__(self, "coeffs", tuple(_norm(c, table) for c in coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def table(self) -> SymbolTable | None:
        return _table_of(self.coeffs)

    def __getitem__(self, n):
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)


@dataclass(frozen=True)
class MeanSeries:
    """Expansion ``sum_n k_n t**(2n) x**(-2n+1)`` of a symmetric homogeneous mean."""

    coeffs: tuple

    def __init__(self, coeffs: Sequence, table: SymbolTable | None = None):
        coeffs = tuple(coeffs)
        if not coeffs:
            raise SeriesError("a mean series needs at least k_0")
        table = table or _table_of(coeffs)
        coeffs = tuple(_norm(c, table) for c in coeffs)
        if coeffs[0] != 1:
            raise SeriesError(f"k_0 must be 1 for a mean, got {coeffs[0]}")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def mode(self) -> str:
        return "symbolic" if isinstance(self.coeffs[0], Poly) else "numeric"

    @property
    def table(self) -> SymbolTable | None:
        return self.coeffs[0].table if self.mode == "symbolic" else None

    def __getitem__(self, n):
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)

    def truncate(self, order: int) -> "MeanSeries":
        if order > self.order:
            raise SeriesError(f"cannot truncate order {self.order} series to {order}")
        return MeanSeries(self.coeffs[: order + 1])

    def promote(self, table: SymbolTable) -> "MeanSeries":
        """Symbolic copy over ``table`` (numeric coefficients become constants)."""
        out = []
        for c in self.coeffs:
            out.append(c.embed(table) if isinstance(c, Poly) else Poly.const(table, c))
        return MeanSeries(out)

    def substitute(self, assignment: dict) -> "MeanSeries":
        """Numeric series obtained by evaluating every coefficient."""
        if self.mode == "numeric":
            return self
        return MeanSeries([c.eval(assignment) for c in self.coeffs])

    def evaluate(self, x, t):
        """Partial sum at ``(x, t)``; ``x`` and ``t`` may be mpf values for high precision."""
        if self.mode != "numeric":
            raise SeriesError("substitute symbols before numeric evaluation")
        y = t * t / (x * x)
        total = 0
        power = 1
        for k in self.coeffs:
            total = total + as_like(k, x) * power
            power = power * y
        return x * total

    def to_json(self) -> dict:
        return {"order": self.order, "mode": self.mode, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: Union[str, dict], table: SymbolTable | None = None) -> "MeanSeries":
        if isinstance(data, str):
            data = json.loads(data)
        coeffs = data["coeffs"]
        if len(coeffs) != data.get("order", len(coeffs) - 1) + 1:
            raise SeriesError("order field does not match the coefficient count")
        mode = data.get("mode", "numeric")
        if mode == "numeric":
            return cls([Fraction(c) for c in coeffs])
        if table is None:
            names = data.get("symbols")
            if not names:
                raise SeriesError("symbolic series need a symbol table")
            table = SymbolTable(names)
        return cls([Poly.parse(table, c) for c in coeffs])


# ---------------------------------------------------------------------------
# lazily extended coefficient sequences


class _Lazy:
    """Memoised sequence whose n-th entry may depend on earlier entries."""

    __slots__ = ("_fn", "_cache")

    def __init__(self, fn: Callable[[int], Coeff]):
        self._fn = fn
        self._cache: list = []

    def __getitem__(self, n: int):
        cache = self._cache
        while len(cache) <= n:
            cache.append(self._fn(len(cache)))
        return cache[n]


def _product(f, g) -> _Lazy:
    return _Lazy(lambda n: sum((f[i] * g[n - i] for i in range(n + 1)), 0))


def _delta(n: int):
    return 1 if n == 0 else 0


def _power(base, r: Fraction) -> _Lazy:
    """``P[n, r, base]`` for all n.

    Non-negative integer powers use repeated Cauchy products and accept any
    leading coefficient; every other exponent needs ``base[0] == 1``.
    """
    if r == 0:
        return _Lazy(_delta)
    if r.denominator == 1 and r > 0:
        r = int(r)
        if r == 1:
            return base if isinstance(base, _Lazy) else _Lazy(lambda n: base[n])
        half = _power(base, Fraction(r // 2))
        sq = _product(half, half)
        return _product(sq, base) if r % 2 else sq
    if not _is_one(base[0]):
        raise SeriesError("rational powers require a unit leading coefficient")

    def coef(n):
        if n == 0:
            return 1
        acc = 0
        for k in range(1, n + 1):
            w = k * (1 + r) - n
            if w:
                acc = acc + (w * base[k]) * out[n - k]
        return acc * Fraction(1, n)

    out = _Lazy(coef)
    return out


def power_coefficient(coeffs: Sequence, r, n: int):
    """``P[n, r, coeffs]``: n-th coefficient of the r-th power of a series."""
    return _power(coeffs, Fraction(r))[n]


# ---------------------------------------------------------------------------
# public operations


def _need(s, N: int, what: str) -> None:
    if len(s) < N + 1:
        raise SeriesError(f"{what} has order {len(s) - 1}, need {N}")


def _coerce_plain(s) -> PlainSeries:
    return s if isinstance(s, PlainSeries) else PlainSeries(s)


def series_mul(f, g, N: int) -> PlainSeries:
    """Truncated Cauchy product of two plain series."""
    f, g = _coerce_plain(f), _coerce_plain(g)
    _need(f, N, "f")
    _need(g, N, "g")
    prod = _product(f.coeffs, g.coeffs)
    return PlainSeries([prod[n] for n in range(N + 1)])


def series_quotient(f, g, N: int) -> PlainSeries:
    """Coefficients of ``f / g`` up to order N.

    ``q_n = (f_n - sum_{k<n} g_{n-k} q_k) / g_0``.
    """
    f, g = _coerce_plain(f), _coerce_plain(g)
    _need(f, N, "f")
    _need(g, N, "g")
    if not g[0]:
        raise SeriesError("divisor has zero leading coefficient")
    q: list = []
    for n in range(N + 1):
        acc = f[n]
        for k in range(n):
            acc = acc - g[n - k] * q[k]
        q.append(_div_leading(acc, g[0]))
    return PlainSeries(q)


def series_power(s, r, N: int) -> PlainSeries:
    """Coefficients of ``s**r`` up to order N (``s_0 = 1`` unless r is a natural number)."""
    s = _coerce_plain(s)
    _need(s, N, "s")
    r = Fraction(r)
    if not s[0]:
        raise SeriesError("series has zero leading coefficient")
    table = _power(s.coeffs, r)
    return PlainSeries([table[n] for n in range(N + 1)])


def _find_z(a, b, order: int) -> int | None:
    for m in range(1, order + 1):
        diff = a[m] - b[m]
        if diff:
            if isinstance(diff, Poly) and not diff.is_constant():
                logger.info(
                    "composition offset z=%d taken from non-constant difference %s "
                    "(generic parameter values assumed)", m, diff
                )
            return m
    return None


def _composition_tail(gamma, dpows, cpows, n: int, z: int, k_start: int):
    acc = 0
    for k in range(k_start, n // (2 * z) + 1):
        if not gamma[k]:
            continue
        dk, ck = dpows(k), cpows(k)
        inner = 0
        m = n - 2 * z * k
        for j in range(m + 1):
            inner = inner + dk[j] * ck[m - j]
        acc = acc + gamma[k] * inner
    return acc


class _PowerFamily:
    """``k -> P[., 2k, d]`` and ``k -> P[., 1-2k, c]`` tables, built on demand."""

    def __init__(self, base, exponent: Callable[[int], int]):
        self._base = base
        self._exponent = exponent
        self._tables: dict[int, _Lazy] = {}

    def __call__(self, k: int) -> _Lazy:
        t = self._tables.get(k)
        if t is None:
            t = self._tables[k] = _power(self._base, Fraction(self._exponent(k)))
        return t


def series_compose_means(F: MeanSeries, M: MeanSeries, N_: MeanSeries, order: int) -> MeanSeries:
    """Expansion of the composed mean ``F(M, N_)`` up to ``order``.

    ``h_n = sum_k gamma_k sum_j P[j, 2k, d] P[n - 2zk - j, 1 - 2k, c]`` with
    ``c_n = (a_n + b_n)/2``, ``d_n = (a_{n+z} - b_{n+z})/2`` and ``z`` the first
    index where the two argument expansions differ.
    """
    tables = {s.table for s in (F, M, N_) if s.mode == "symbolic"}
    if len(tables) > 1:
        raise SeriesError("symbolic arguments live over different symbol tables")
    if tables:
        (table,) = tables
        F, M, N_ = (s.promote(table) for s in (F, M, N_))
    for s, name in ((F, "F"), (M, "M"), (N_, "N")):
        _need(s, order, name)
    a, b, gamma = M.coeffs, N_.coeffs, F.coeffs
    z = _find_z(a, b, order)
    if z is None:
        return M.truncate(order)

    half = Fraction(1, 2)
    mean = _Lazy(lambda n: (a[n] + b[n]) * half)
    diff = _Lazy(lambda n: (a[n + z] - b[n + z]) * half)
    dpows = _PowerFamily(diff, lambda k: 2 * k)
    cpows = _PowerFamily(mean, lambda k: 1 - 2 * k)
    h = [_composition_tail(gamma, dpows, cpows, n, z, 0) for n in range(order + 1)]
    return MeanSeries(h, table=M.table)
