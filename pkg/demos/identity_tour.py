# The integral identities behind the routes, checked numerically.
import numpy as np

from phasecount import (GaussianEnvelope, hermite_shift_closed, hermite_shift_sum,
                        integrate_plane, laguerre_gauss_closed, laguerre_seq,
                        legendre_gauss_closed)
from phasecount.identities import run_all

# Laguerre against a shifted Gaussian
m, A, B, C = 3, 1.5, 2.0, 0.4 + 0.3j
f = lambda z: np.exp(-B * abs(z) ** 2 + C * z - np.conj(C) * np.conj(z)) * laguerre_seq(m, A * abs(z) ** 2)[m]
res = integrate_plane(f, GaussianEnvelope(B, center=np.conj(C) / B))
print("quadrature", res.value, "+/-", res.error_estimate)
print("closed    ", laguerre_gauss_closed(m, A, B, C))

# Laguerre against an anisotropic Gaussian: the envelope carries the quadratic form
C = 0.6
g = lambda z: np.exp(-B * abs(z) ** 2 + C * (z * z + np.conj(z) ** 2)) * laguerre_seq(m, A * abs(z) ** 2)[m]
res = integrate_plane(g, GaussianEnvelope.from_form(np.diag([B - 2 * C, B + 2 * C])))
print("quadrature", res.value.real, " closed", legendre_gauss_closed(m, A, B, C))

# shift series for the two-variable Hermite polynomials: converges like |alpha|^l
x, y = 0.7 + 0.2j, 1.1 - 0.3j
for alpha in (0.3, 0.6, 0.9):
    exact = hermite_shift_closed(2, 1, alpha, x, y)
    for terms in (20, 80):
        rel = abs(hermite_shift_sum(2, 1, alpha, x, y, terms) - exact) / abs(exact)
        print(f"alpha={alpha} terms={terms:3d} rel err {rel:.1e}")

for row in run_all():
    print(row)
