import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from meanforge.means import (
    ARITHMETIC,
    GEOMETRIC,
    HARMONIC,
    DomainError,
    catalan,
    classic_series,
    lc_coefficient,
    lc_eval,
    lc_limit_checks,
    lc_mean,
    lc_series,
    lc_truncation_error,
    parse_mean,
)
from meanforge.poly import SymbolTable
from meanforge.symmetry import lc_quadratic_residual
from meanforge.verify import truncation_slope

pos = st.floats(1e-3, 1e3, allow_nan=False, allow_infinity=False)
params = st.floats(-1, 100, allow_nan=False)


def catalan_by_recursion(n):
    C = [1]
    for m in range(n):
        C.append(sum(C[k] * C[m - k] for k in range(m + 1)))
    return C[n]


class TestCatalan:
    def test_first(self):
        assert catalan(0) == 1

    def test_fifth(self):
        assert catalan(5) == 42

    @pytest.mark.parametrize("n", range(13))
    def test_recursion(self, n):
        assert catalan(n) == catalan_by_recursion(n)

    def test_negative(self):
        with pytest.raises(ValueError):
            catalan(-1)


class TestClosedForm:
    def test_arithmetic(self):
        assert lc_eval(0, 1.0, 3.0) == pytest.approx(2, abs=1e-15)

    def test_geometric(self):
        assert lc_eval(Fraction(-1, 2), 1.0, 4.0) == pytest.approx(2, abs=1e-15)

    def test_harmonic(self):
        assert lc_eval(-1, 1.0, 2.0) == pytest.approx(4 / 3, abs=1e-15)

    def test_below_minus_one_rejected(self):
        with pytest.raises(DomainError):
            lc_eval(-1.5, 1.0, 2.0)

    def test_non_positive_rejected(self):
        with pytest.raises(DomainError):
            lc_eval(1, 0.0, 2.0)

    def test_diagonal_exact(self):
        for c in (-1, -0.75, -0.5, 0, 0.3, 7):
            assert lc_eval(c, 2.5, 2.5) == 2.5

    def test_vectorized(self):
        a, b = np.array([1.0, 2.0, 3.0]), np.array([4.0, 2.0, 1.0])
        out = lc_eval(Fraction(-1, 2), a, b)
        assert np.allclose(out, np.sqrt(a * b), rtol=1e-15)
        assert out[1] == 2.0

    def test_mpmath_pass_through(self):
        with mpmath.workdps(50):
            v = lc_eval(Fraction(-1, 2), mpmath.mpf(1), mpmath.mpf(4))
            assert isinstance(v, mpmath.mpf)
            assert abs(v - 2) < mpmath.mpf(10) ** -45

    def test_parse_mean(self):
        assert parse_mean("G") is GEOMETRIC
        assert parse_mean("Lc:1/3")(1.0, 2.0) == lc_eval(Fraction(1, 3), 1.0, 2.0)
        with pytest.raises(KeyError):
            parse_mean("Q")


class TestSeries:
    def test_c2(self):
        c = SymbolTable(["c"])["c"]
        assert lc_series(None, 2)[2] == -(c**2) * (1 + c)

    def test_arithmetic(self):
        assert lc_series(0, 6) == classic_series("A", 6)

    @pytest.mark.parametrize("n", range(1, 10))
    def test_geometric_coefficients(self, n):
        assert lc_series(Fraction(-1, 2), 9)[n] == Fraction(-catalan(n - 1), 2 ** (2 * n - 1))

    def test_harmonic(self):
        s = classic_series("H", 5)
        assert s[1] == -1 and all(k == 0 for k in s.coeffs[2:])

    def test_g_k3(self):
        assert classic_series("G", 3)[3] == Fraction(-1, 16)

    def test_special_cases_agree(self):
        for c, w in ((-1, "H"), (Fraction(-1, 2), "G"), (0, "A")):
            assert lc_series(c, 12) == classic_series(w, 12)

    @given(st.fractions(-1, 5, max_denominator=9), st.integers(1, 8))
    def test_symbolic_and_numeric_agree(self, c, n):
        assert lc_series(None, n)[n].eval({"c": c}) == lc_coefficient(c, n)


class TestLimits:
    def test_report(self):
        r = lc_limit_checks(1, 2)
        assert abs(r.at_plus_infinity - 2) < 1e-3
        assert abs(r.right_of_minus_one - 4 / 3) < 1e-6
        assert r.left_of_minus_one > 1e6
        assert r.ok

    def test_literal_form_left_of_minus_one(self):
        # without switching roots the closed form returns to the harmonic mean
        assert abs(lc_limit_checks(1, 2).literal_left_of_minus_one - 4 / 3) < 1e-6

    @given(pos, pos)
    def test_limits_hold_everywhere(self, a, b):
        assume(abs(a - b) > 1e-2 * max(a, b))
        assert lc_limit_checks(a, b).ok


@given(params, pos, pos)
def test_betweenness(c, a, b):
    assume(a != b)
    v = lc_eval(c, a, b)
    assert min(a, b) <= v <= max(a, b)


@given(params, pos, pos)
def test_symmetry(c, a, b):
    assert lc_eval(c, a, b) == pytest.approx(lc_eval(c, b, a), rel=1e-14)


@given(params, pos, pos, st.floats(1e-2, 1e2))
def test_homogeneity(c, a, b, lam):
    assert lc_eval(c, lam * a, lam * b) == pytest.approx(lam * lc_eval(c, a, b), rel=1e-12)


@given(params, params, pos, pos)
def test_monotone_in_parameter(c1, c2, a, b):
    assume(abs(c1 - c2) > 1e-6 and abs(a - b) > 1e-3 * max(a, b))
    lo, hi = sorted((c1, c2))
    assert lc_eval(lo, a, b) < lc_eval(hi, a, b)


@given(params, pos, pos)
def test_quadratic_identity(c, a, b):
    assert abs(lc_quadratic_residual(c, a, b)) <= 1e-10 * (a + b) ** 2


@pytest.mark.parametrize("mean, ref", [(ARITHMETIC, lambda a, b: (a + b) / 2), (GEOMETRIC, lambda a, b: math.sqrt(a * b)), (HARMONIC, lambda a, b: 2 * a * b / (a + b))])
def test_classic_means(mean, ref):
    assert mean(1.0, 4.0) == pytest.approx(ref(1.0, 4.0))
    assert mean(3.0, 3.0) == 3.0


def test_lc_mean_properties():
    m = lc_mean(0.3)
    assert m(2.0, 7.0) == lc_eval(Fraction(3, 10), 2.0, 7.0)
    with pytest.raises(DomainError):
        lc_mean(-2)


@pytest.mark.parametrize("c", [Fraction(-1, 2), Fraction(1)])
@pytest.mark.parametrize("order", [3, 5, 8])
def test_truncation_slope(c, order):
    assert abs(truncation_slope(c, order) + (2 * order + 1)) <= 0.3


def test_truncation_error_is_small():
    assert lc_truncation_error(1, 6, 100) < mpmath.mpf(10) ** -20
