# Coherent light should give Poisson counts with mean zeta*|beta|^2,
# whichever phase-space function we start from.
import numpy as np
from scipy import stats

from phasecount import DetectionSpec, coherent, compute

beta = 1.0 + 0.5j
det = DetectionSpec(zeta=0.6, m_max=12)
state = coherent(beta)

poisson = stats.poisson.pmf(np.arange(det.m_max + 1), det.zeta * abs(beta) ** 2)

for route in ("cf", "wigner", "q", "p", "fock"):
    dist = compute(state, route, det)
    dev = np.max(np.abs(np.asarray(dist.probabilities) - poisson))
    print(f"{route:7s} max |p - poisson| = {dev:.2e}   error estimate {dist.error_estimate:.1e}")

# the P function of a coherent state is a point mass, so that route is exact
print(np.round(compute(state, "p", det).probabilities[:6], 6))
