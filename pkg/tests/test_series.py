import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from meanforge.means import GEOMETRIC, HARMONIC, classic_series, lc_eval, lc_series
from meanforge.poly import Poly, SymbolTable
from meanforge.series import (
    MeanSeries,
    SeriesError,
    power_coefficient,
    series_compose_means,
    series_mul,
    series_power,
    series_quotient,
)

N = 8
SYM = SymbolTable([f"{p}{i}" for p in "fgab" for i in range(N + 1)])


def sym_plain(prefix, unit=False):
    head = [Poly.const(SYM, 1)] if unit else [SYM[f"{prefix}0"]]
    return head + [SYM[f"{prefix}{i}"] for i in range(1, N + 1)]


def sym_mean(prefix, order=N):
    return MeanSeries([Poly.const(SYM, 1)] + [SYM[f"{prefix}{i}"] for i in range(1, order + 1)])


rat_lists = st.lists(st.fractions(-3, 3, max_denominator=5), min_size=N, max_size=N)


class TestExamples:
    def test_geometric_times_one_minus_y(self):
        assert series_mul([1] * 5, [1, -1, 0, 0, 0], 4).coeffs == (1, 0, 0, 0, 0)

    def test_mul_identity(self):
        f = [Fraction(2), Fraction(1, 3), Fraction(-4)]
        assert series_mul(f, [1, 0, 0], 2).coeffs == tuple(f)

    def test_binomial(self):
        assert series_mul([1, 1, 0], [1, 1, 0], 2).coeffs == (1, 2, 1)

    def test_quotient_by_itself(self):
        f = [Fraction(3), Fraction(1), Fraction(-2), Fraction(5)]
        assert series_quotient(f, f, 3).coeffs == (1, 0, 0, 0)

    def test_quotient_geometric(self):
        assert series_quotient([1, 0, 0, 0], [1, -1, 0, 0], 3).coeffs == (1, 1, 1, 1)

    def test_quotient_zero_leading(self):
        with pytest.raises(SeriesError):
            series_quotient([1, 0], [0, 1], 1)

    def test_power_one(self):
        s = [Fraction(1), Fraction(2, 3), Fraction(-1)]
        assert series_power(s, 1, 2).coeffs == tuple(s)

    def test_power_square(self):
        assert series_power([1, 1, 0], 2, 2).coeffs == (1, 2, 1)

    def test_power_inverse(self):
        assert series_power([1, 1, 0], -1, 2).coeffs == (1, -1, 1)

    def test_power_natural_exponent_non_unit_leading(self):
        assert series_power([2, 1, 0], 2, 2).coeffs == (4, 4, 1)

    def test_power_half_against_binomial(self):
        # (1 + y)^(1/2) = sum binom(1/2, n) y^n
        half = Fraction(1, 2)
        expected = [Fraction(1)]
        for n in range(1, 6):
            expected.append(expected[-1] * (half - n + 1) / n)
        assert list(series_power([1, 1, 0, 0, 0, 0], half, 5).coeffs) == expected

    def test_power_coefficient(self):
        assert power_coefficient([1, 1, 0, 0], 3, 2) == 3

    def test_insufficient_order(self):
        with pytest.raises(SeriesError):
            series_mul([1, 1], [1, 1, 1], 2)

    def test_compose_with_arithmetic(self):
        h = series_compose_means(classic_series("A", 6), sym_mean("a", 6), sym_mean("b", 6), 6)
        for n in range(7):
            assert h[n] == (sym_mean("a", 6)[n] + sym_mean("b", 6)[n]) / 2

    def test_compose_idempotent(self):
        M = lc_series(Fraction(3, 7), 6)
        assert series_compose_means(classic_series("G", 6), M, M, 6) == M

    def test_gauss_invariance_g_of_a_h(self):
        h = series_compose_means(classic_series("G", 6), classic_series("A", 6), classic_series("H", 6), 6)
        assert h == classic_series("G", 6)

    def test_mean_series_rejects_bad_leading(self):
        with pytest.raises(SeriesError):
            MeanSeries([2, 1])

    def test_json_round_trip_numeric(self):
        s = lc_series(Fraction(2, 3), 5)
        assert MeanSeries.from_json(s.to_json()) == s

    def test_json_round_trip_symbolic(self):
        s = lc_series(None, 5)
        data = dict(s.to_json(), symbols=["c"])
        assert MeanSeries.from_json(data) == s


class TestSymbolic:
    """Exact identities with fully symbolic coefficients at order 8."""

    def test_mul_undoes_quotient(self):
        f, g = sym_plain("f"), sym_plain("g", unit=True)
        q = series_quotient(f, g, N)
        assert list(series_mul(q, g, N).coeffs) == f

    @pytest.mark.parametrize("r, s", [(Fraction(1, 3), Fraction(-5, 2)), (2, 3), (Fraction(1, 2), Fraction(1, 2))])
    def test_power_additivity(self, r, s):
        g = sym_plain("g", unit=True)
        lhs = series_mul(series_power(g, r, N), series_power(g, s, N), N)
        assert lhs == series_power(g, Fraction(r) + Fraction(s), N)

    def test_power_minus_one_is_quotient(self):
        g = sym_plain("g", unit=True)
        one = [Poly.const(SYM, 1)] + [Poly.zero(SYM)] * N
        assert series_power(g, -1, N) == series_quotient(one, g, N)

    def test_compose_arithmetic_averages(self):
        h = series_compose_means(classic_series("A", N).promote(SYM), sym_mean("a"), sym_mean("b"), N)
        assert all(h[n] == (sym_mean("a")[n] + sym_mean("b")[n]) / 2 for n in range(N + 1))

    def test_compose_commutes_with_substitution(self):
        F, M, K = sym_mean("f", 5), sym_mean("a", 5), sym_mean("b", 5)
        env = {n: Fraction(i % 7 - 3, i % 4 + 1) for i, n in enumerate(SYM.names)}
        env["a1"], env["b1"] = Fraction(1, 2), Fraction(-2, 3)
        h = series_compose_means(F, M, K, 5).substitute(env)
        direct = series_compose_means(F.substitute(env), M.substitute(env), K.substitute(env), 5)
        assert h == direct


@given(rat_lists, rat_lists)
def test_quotient_mul_random(f, g):
    g = [Fraction(1)] + g[1:]
    f = [Fraction(1)] + f[1:]
    q = series_quotient(f, g, N - 1)
    assert list(series_mul(q, g, N - 1).coeffs) == f


@given(rat_lists, st.fractions(-3, 3, max_denominator=4), st.fractions(-3, 3, max_denominator=4))
def test_power_additivity_random(s, r, t):
    s = [Fraction(1)] + s[1:]
    lhs = series_mul(series_power(s, r, N - 1), series_power(s, t, N - 1), N - 1)
    assert lhs == series_power(s, r + t, N - 1)


@given(st.lists(st.fractions(-2, 2, max_denominator=5), min_size=6, max_size=6),
       st.lists(st.fractions(-2, 2, max_denominator=5), min_size=6, max_size=6))
def test_compose_symmetric_in_arguments(a, b):
    F = lc_series(Fraction(1, 3), 5)
    M, K = MeanSeries([1] + a[:5]), MeanSeries([1] + b[:5])
    assert series_compose_means(F, M, K, 5) == series_compose_means(F, K, M, 5)


def test_numeric_composition_matches_series():
    """L_1(G, H) against the composed expansion; the error decays like x^-(2N+1)."""
    order = 5
    c = Fraction(1)
    h = series_compose_means(lc_series(c, order), classic_series("G", order), classic_series("H", order), order)
    errors = {}
    with mpmath.workdps(80):
        for x in (50, 100, 200):
            X, T = mpmath.mpf(x), mpmath.mpf(1)
            u, v = X - T, X + T
            exact = lc_eval(c, GEOMETRIC(u, v), HARMONIC(u, v))
            errors[x] = abs(exact - h.evaluate(X, T))
    slope_lo = math.log(errors[100] / errors[50]) / math.log(2)
    slope_hi = math.log(errors[200] / errors[100]) / math.log(2)
    for slope in (slope_lo, slope_hi):
        assert abs(slope + (2 * order + 1)) < 0.3
    # error bound K x^-(2N+1) fitted at x=50 with 10% slack holds further out
    K = float(errors[50]) * 50 ** (2 * order + 1) * 1.1
    for x in (100, 200):
        assert float(errors[x]) <= K * x ** -(2 * order + 1)
