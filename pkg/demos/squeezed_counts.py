# Squeezed vacuum: photons come in pairs, so with a perfect detector
# odd counts never happen. Losses (zeta < 1) break the pairs.
import numpy as np

from phasecount import DetectionSpec, closed_squeezed, compute, squeezed

r = 0.8
state = squeezed(r)
print("mean photon number sinh^2 r =", np.sinh(r) ** 2)

for zeta in (1.0, 0.7, 0.3):
    det = DetectionSpec(zeta, 10)
    p = np.asarray(closed_squeezed(r, det).probabilities)
    print(f"zeta={zeta}: ", np.array2string(p, precision=4, suppress_small=True))

# cross-check the closed form against the CF and Wigner routes
det = DetectionSpec(0.7, 20)
closed = np.asarray(closed_squeezed(r, det).probabilities)
for route in ("cf", "wigner", "fock"):
    other = np.asarray(compute(state, route, det).probabilities)
    print(route, "vs closed form:", f"{np.max(np.abs(other - closed)):.1e}")

# P route is not available: the squeezed P function is not a regular function
try:
    compute(state, "p", det)
except ValueError as exc:
    print(type(exc).__name__, "-", exc)
