"""Truncated series for mean expansions, with exact rational and polynomial coefficients."""

# %% A mean's expansion M(x - t, x + t) = sum k_n t^(2n) x^(-2n+1)
from fractions import Fraction

from meanforge import MeanSeries, classic_series, series_compose_means, series_mul, series_power, series_quotient
from meanforge.poly import SymbolTable

G = classic_series("G", 6)
print("geometric mean:", [str(k) for k in G.coeffs])

# %% Plain series arithmetic: 1/(1 - y) and its inverse
geom = series_quotient([1, 0, 0, 0, 0], [1, -1, 0, 0, 0], 4)
print("1/(1-y):", [str(k) for k in geom.coeffs])
print("back:   ", [str(k) for k in series_mul(geom, [1, -1, 0, 0, 0], 4).coeffs])

# %% Rational powers: sqrt(1 + y) from the power recursion
print("sqrt(1+y):", [str(k) for k in series_power([1, 1, 0, 0, 0], Fraction(1, 2), 4).coeffs])

# %% Composition of means: G(A, H) = G, the classic invariance
A, H = classic_series("A", 6), classic_series("H", 6)
print("G(A, H) == G:", series_compose_means(G, A, H, 6) == G)

# %% The same code runs on symbolic coefficients
T = SymbolTable(["a1", "a2", "a3", "b1", "b2", "b3"])
M = MeanSeries([1, T["a1"], T["a2"], T["a3"]])
K = MeanSeries([1, T["b1"], T["b2"], T["b3"]])
for n, h in enumerate(series_compose_means(G.truncate(3), M, K, 3).coeffs):
    print(f"G(M, K) coefficient {n}: {h}")
