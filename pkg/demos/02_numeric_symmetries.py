"""The group law on means and the two symmetric means S and sigma, evaluated numerically."""

# %% The transport phi and the group law star
import numpy as np

from meanforge import ARITHMETIC as A, GEOMETRIC as G, HARMONIC as H
from meanforge import lc_mean, phi, phi_inverse, sigma_lc_closed, star, symmetry_S, symmetry_sigma

print("phi_G(1, 4)       =", phi(G, 1.0, 4.0))
print("phi_inverse(...)  =", phi_inverse(phi(G, 1.0, 4.0), 1.0, 4.0))
print("(G * G)(1, 4)     =", star(G, G)(1.0, 4.0))
print("(G * A)(1, 4)     =", star(G, A)(1.0, 4.0), "(A is neutral)")

# %% Group symmetry S and Gauss symmetry sigma agree for the classic means
a = np.array([1.0, 2.0, 0.5, 10.0])
b = np.array([4.0, 3.0, 7.0, 0.1])
for M0 in (A, G, H):
    s, g = symmetry_S(M0, A)(a, b), symmetry_sigma(M0, A)(a, b)
    print(f"M0={M0.name}: S={np.round(s, 6)}  sigma={np.round(g, 6)}")

# %% For a generic reference mean they differ...
GH = star(G, H)
print(f"M0=G*H: S={symmetry_S(GH, A)(1.0, 4.0):.15f}  sigma={symmetry_sigma(GH, A)(1.0, 4.0):.15f}")

# %% ...but for every L_c they coincide
for c in (-0.75, 0.3, 5):
    Lc = lc_mean(c)
    print(f"c={c}: S={symmetry_S(Lc, H)(2.0, 7.0):.15f}  sigma={sigma_lc_closed(c, H)(2.0, 7.0):.15f}")
