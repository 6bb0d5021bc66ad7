"""The L_c family: special members, monotonicity, limits and truncation behaviour."""

# %% Special members
from fractions import Fraction

import numpy as np

from meanforge import ARITHMETIC as A, GEOMETRIC as G, HARMONIC as H, lc_eval
from meanforge.means import lc_limit_checks, lc_truncation_error
from meanforge.verify import truncation_slope

for c, M in ((-1, H), (Fraction(-1, 2), G), (0, A)):
    print(f"L_{c}(1, 4) = {lc_eval(c, 1.0, 4.0):.15f}   {M.name}(1, 4) = {M(1.0, 4.0):.15f}")

# %% L_c(1, 4) increases with c, from H towards max(a, b)
cs = np.array([-1, -0.9, -0.5, 0, 1, 10, 1000])
print(np.array([lc_eval(c, 1.0, 4.0) for c in cs]))

# %% Limits in the parameter
print(lc_limit_checks(1, 2))

# %% Truncating the expansion at order N leaves an error of order x^-(2N+1)
for N in (3, 5, 8):
    print(f"N={N}: error at x=100 is {float(lc_truncation_error(1, N, 100)):.3e}, slope {truncation_slope(1, N):.3f}")
