"""Numeric group structure on means and the two symmetries.

``phi`` maps a mean to an antisymmetric function, ``star`` is the induced
group law (neutral element A), ``symmetry_S`` is the group symmetry and
``symmetry_sigma`` solves the Gauss functional equation by bisection.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import _numeric as nx
from .means import NumericMean, lc_eval

__all__ = [
    "NumericalBreakdown",
    "BracketError",
    "ConvergenceError",
    "GaussSolverConfig",
    "phi",
    "phi_inverse",
    "star",
    "symmetry_S",
    "symmetry_sigma",
    "sigma_lc_closed",
    "coincidence_residual",
    "CoincidenceResidual",
    "lc_quadratic_residual",
]

DIAGONAL_TOL = 1e-14


class NumericalBreakdown(ArithmeticError):
    """A formula hit a vanishing denominator away from the diagonal."""


class BracketError(ArithmeticError):
    """The Gauss equation residual has the same sign at both ends of the bracket."""


class ConvergenceError(ArithmeticError):
    """Bisection did not reach the tolerance within the iteration budget."""


@dataclass(frozen=True)
class GaussSolverConfig:
    rtol: float = 1e-13
    max_iter: int = 200

    def __post_init__(self):
        if not self.rtol > 0:
            raise ValueError("tolerance must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")


def _prep(a, b):
    scalar = np.ndim(a) == 0 and np.ndim(b) == 0
    mp = nx.is_mp(a) or nx.is_mp(b)
    dtype = object if mp else float
    a, b = np.broadcast_arrays(np.asarray(a, dtype=dtype), np.asarray(b, dtype=dtype))
    return a, b, scalar


def _finish(out, scalar):
    return out.reshape(()).item() if scalar else out


def _diagonal(a, b):
    return np.asarray(abs(a - b) <= DIAGONAL_TOL * (a + b), dtype=bool)


def _offdiag(fn):
    """Evaluate ``fn`` off the diagonal and return ``a`` on it."""

    def wrapped(a, b):
        a, b, scalar = _prep(a, b)
        out = a.copy()
        off = ~_diagonal(a, b)
        if off.any():
            out[off] = fn(a[off], b[off])
        return _finish(out, scalar)

    return wrapped


def _guard(den, scale, what):
    tiny = abs(den) <= 1e-300 * scale if not nx.is_mp(den) else den == 0
    if np.any(tiny):
        raise NumericalBreakdown(f"vanishing denominator in {what}")


def phi(M: NumericMean, x, y):
    """``log(-(M - x) / (M - y))`` off the diagonal, 0 on it."""
    x, y, scalar = _prep(x, y)
    out = np.zeros_like(x)
    off = ~_diagonal(x, y)
    if off.any():
        xs, ys = x[off], y[off]
        m = M(xs, ys)
        num, den = m - xs, m - ys
        if np.any(num == 0) or np.any(den == 0):
            raise NumericalBreakdown(f"{M.name} is not strict at the given points")
        ratio = -num / den
        if np.any(ratio <= 0):
            raise NumericalBreakdown(f"{M.name} leaves the interval between its arguments")
        out[off] = nx.log(ratio) if not nx.is_mp(ratio) else np.array([nx.log(r) for r in ratio], dtype=object)
    return _finish(out, scalar)


def phi_inverse(v, x, y):
    """Mean value ``m`` with ``phi(m)(x, y) = v``: ``(x + y e^v) / (1 + e^v)``."""
    v = np.asarray(v, dtype=float)
    x, y, scalar = _prep(x, y)
    v = np.broadcast_to(v, x.shape)
    # divide through by the larger exponential; saturates for |v| beyond exp range
    pos = v > 0
    e = np.exp(-np.abs(np.clip(v, -700, 700)))
    out = np.where(pos, (x * e + y) / (e + 1), (x + y * e) / (1 + e))
    out = np.where(v > 700, y, np.where(v < -700, x, out))
    out = np.where(_diagonal(x, y), x, out)
    return _finish(out, scalar and np.ndim(v) == 0)


def star(M1: NumericMean, M2: NumericMean) -> NumericMean:
    """The group law ``M1 * M2 = phi^-1(phi(M1) + phi(M2))`` in explicit form."""

    @_offdiag
    def fn(x, y):
        m1, m2 = M1(x, y), M2(x, y)
        num = x * (m1 - y) * (m2 - y) + y * (m1 - x) * (m2 - x)
        den = (m1 - x) * (m2 - x) + (m1 - y) * (m2 - y)
        # both products are negative for strict means; a zero means underflow
        diag_like = den == 0
        if np.any(diag_like):
            den = np.where(diag_like, 1, den)
            return np.where(diag_like, x, num / den)
        return num / den

    return NumericMean(fn, f"({M1.name} * {M2.name})")


def symmetry_S(M0: NumericMean, M1: NumericMean) -> NumericMean:
    """Group symmetry: the mean M2 with ``M1 * M2 = M0 * M0``."""

    @_offdiag
    def fn(x, y):
        m0, m1 = M0(x, y), M1(x, y)
        p, q = (m0 - y) ** 2, (m0 - x) ** 2
        num = x * (m1 - x) * p - y * q * (m1 - y)
        den = (m1 - x) * p - q * (m1 - y)
        _guard(den, (x + y) ** 3, "symmetry_S")
        return num / den

    return NumericMean(fn, f"S_{M0.name}({M1.name})")


def _bisect(M0, m1, lo, hi, target, cfg: GaussSolverConfig):
    def resid(v):
        return M0(m1, v) - target

    f_lo, f_hi = resid(lo), resid(hi)
    if np.any(f_lo * f_hi > 0):
        raise BracketError(
            f"{M0.name}(m1, v) - {M0.name}(a, b) does not change sign on [min(a,b), max(a,b)]"
        )

    def converged(lo, hi):
        # lo <= root, so rtol * lo bounds the relative error; the second test
        # catches brackets already at adjacent floats
        mid = (lo + hi) / 2
        return np.all((hi - lo <= cfg.rtol * abs(lo)) | (mid == lo) | (mid == hi))

    for _ in range(cfg.max_iter):
        if converged(lo, hi):
            return (lo + hi) / 2
        mid = (lo + hi) / 2
        f_mid = resid(mid)
        # root stays in [mid, hi] when f(mid) has the sign of f(lo)
        right = np.asarray((f_mid * f_lo) > 0, dtype=bool)
        lo = np.where(right, mid, lo)
        f_lo = np.where(right, f_mid, f_lo)
        hi = np.where(right, hi, mid)
    if converged(lo, hi):
        return (lo + hi) / 2
    raise ConvergenceError(f"bisection did not converge in {cfg.max_iter} iterations")


def symmetry_sigma(M0: NumericMean, M1: NumericMean, cfg: GaussSolverConfig | None = None) -> NumericMean:
    """Functional symmetry: the mean v with ``M0(M1(a, b), v) = M0(a, b)``.

    The root lies between min(a, b) and max(a, b) and is found by bisection;
    the orientation of the bracket is taken from the endpoint signs.
    """
    cfg = cfg or GaussSolverConfig()

    @_offdiag
    def fn(a, b):
        below = np.asarray(a < b, dtype=bool)
        lo, hi = np.where(below, a, b), np.where(below, b, a)
        return _bisect(M0, M1(a, b), lo, hi, M0(a, b), cfg)

    return NumericMean(fn, f"sigma_{M0.name}({M1.name})")


def sigma_lc_closed(c, M: NumericMean) -> NumericMean:
    """Closed form of the functional symmetry with respect to L_c.

    ``sigma = L ((1+2c) M - 2(1+c) L) / (2c M - (1+2c) L)`` with ``L = L_c``.
    """
    if c < -1:
        raise ValueError("closed form holds for c >= -1")

    @_offdiag
    def fn(a, b):
        cc = nx.as_like(c, a.flat[0])
        L, m = lc_eval(c, a, b), M(a, b)
        den = 2 * cc * m - (1 + 2 * cc) * L
        _guard(den, a + b, "sigma_lc_closed")
        return L * ((1 + 2 * cc) * m - 2 * (1 + cc) * L) / den

    return NumericMean(fn, f"sigma_L_{c}({M.name})")


def lc_quadratic_residual(c, a, b, L=None):
    """``2(1+c)L^2 - (a+b)(1+2c)L + 2abc`` at ``L = L_c(a, b)``.

    Computed as ``L((L-a) + (L-b)) + 2c(L-a)(L-b)``, which is the same
    polynomial but has no large cancelling terms and is exactly zero when
    ``a == b``.
    """
    if L is None:
        L = lc_eval(c, a, b)
    cc = nx.as_like(c, L)
    return L * ((L - a) + (L - b)) + 2 * cc * (L - a) * (L - b)


class CoincidenceResidual(NamedTuple):
    gap: float
    factorization: float


def coincidence_residual(c, M: NumericMean, a, b) -> CoincidenceResidual:
    """``|S_{L_c}(M) - sigma_{L_c}(M)|`` and ``(a-b) Q (M-L)^2`` at (a, b).

    ``Q`` is the quadratic whose root is L_c, so the second value vanishes
    up to rounding wherever the two symmetries agree.
    """
    Lc = NumericMean(lambda u, w: lc_eval(c, u, w), f"L_{c}")
    S = symmetry_S(Lc, M)(a, b)
    sig = sigma_lc_closed(c, M)(a, b)
    L, m = lc_eval(c, a, b), M(a, b)
    fact = (a - b) * lc_quadratic_residual(c, a, b, L) * (m - L) ** 2
    return CoincidenceResidual(abs(S - sig), abs(fact))
