"""Photocount distributions of single-mode light from its Fock diagonal,
characteristic function, Wigner, Q or P function."""

from .counting import (
    DetectionSpec,
    PhotocountDistribution,
    RouteDomainError,
    closed_coherent,
    closed_squeezed,
    compute,
    pcount_cf,
    pcount_fock,
    pcount_p,
    pcount_q,
    pcount_wigner,
    thinned_tail,
)
from .quadrature import (
    DivergentIntegralError,
    GaussianEnvelope,
    IntegrandDomainError,
    QuadratureResult,
    QuadratureSpec,
    integrate_plane,
    integrate_plane_batch,
    laguerre_gauss_closed,
    legendre_gauss_closed,
)
from .specfun import (
    DegreeError,
    DomainError,
    hermite2,
    hermite_shift_closed,
    hermite_shift_sum,
    laguerre_seq,
    legendre_kernel,
    legendre_seq,
    legendre_sum_form,
)
from .states import (
    DensityDiagonal,
    PhaseSpaceRep,
    RepresentationUnavailable,
    StateSpec,
    catalog,
    coherent,
    custom,
    density_diagonal,
    fock,
    fourier_check,
    load_diag_csv,
    make_representations,
    squeezed,
    thermal,
)

__version__ = "0.1.0"
