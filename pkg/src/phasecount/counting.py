"""Photocount distributions p(m) for detection efficiency zeta.

Four phase-space routes integrate a Laguerre-Gaussian kernel against the
CF, Wigner, Q or P function.  ``pcount_fock`` is the independent Fock-basis
oracle (binomial thinning of the photon-number distribution), and
``closed_coherent`` / ``closed_squeezed`` are the exact special cases.
"""
from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np
from scipy import stats
from scipy.special import gammaln, xlogy

from .quadrature import QuadratureSpec, integrate_plane_batch
from .specfun import MAX_DEGREE, laguerre_seq, legendre_kernel
from .states import PhaseSpaceRep, RepresentationUnavailable

DEFAULT_M_MAX = 30


class RouteDomainError(ValueError):
    """Efficiency outside the range where a route's formula is defined."""


@dataclass(frozen=True)
class DetectionSpec:
    zeta: float
    m_max: int = DEFAULT_M_MAX

    def __post_init__(self):
        if not 0.0 <= self.zeta <= 1.0:
            raise ValueError(f"zeta must lie in [0, 1], got {self.zeta}")
        if not 0 <= self.m_max <= MAX_DEGREE:
            raise ValueError(f"m_max must lie in [0, {MAX_DEGREE}], got {self.m_max}")


@dataclass(frozen=True)
class PhotocountDistribution:
    zeta: float
    probabilities: np.ndarray
    route: str
    error_estimate: float
    residual_negative: float

    @property
    def total(self):
        return float(np.sum(self.probabilities))

    @property
    def mean(self):
        return float(np.dot(np.arange(len(self.probabilities)), self.probabilities))

    def within_bounds(self):
        """Raw values lie in [-tol, 1] and sum to at most 1 + tol, tol = 10 * error.

        A few ulps per entry are allowed on top so exact routes (error 0) are
        not failed by summation roundoff.
        """
        tol = 10 * self.error_estimate + 4 * np.finfo(float).eps * len(self.probabilities)
        p = self.probabilities
        return bool(np.all(p >= -tol) and np.all(p <= 1 + tol) and p.sum() <= 1 + tol)


def _dist(zeta, p, route, err):
    p = np.asarray(p, dtype=float)
    p.setflags(write=False)
    neg = float(min(0.0, p.min())) if p.size else 0.0
    return PhotocountDistribution(float(zeta), p, route, float(err), neg)


def pcount_fock(diag, det):
    """p(m) = sum_n rho_nn binom(n, m) zeta^m (1 - zeta)^(n - m)."""
    m = np.arange(det.m_max + 1)
    if det.zeta == 0.0:
        # nothing is detected, including whatever the truncation dropped
        return _dist(0.0, (m == 0).astype(float), "fock", 0.0)
    rho = np.asarray(diag.entries)
    n = np.arange(len(rho))
    kernel = stats.binom.pmf(m[:, None], n[None, :], det.zeta)
    return _dist(det.zeta, kernel @ rho, "fock", diag.truncation_tail)


def _require(rep, kind):
    if rep.rep_kind != kind:
        raise ValueError(f"expected a {kind} representation, got {rep.rep_kind}")


def _quad_route(rep, det, spec, route, lag_scale, prefactor_log, prefactor_sign, measure):
    """Shared machinery: integrate kernel(|a|^2) L_m(lag_scale |a|^2) F(a) for all m at once.

    The integrand kernel is exp(-k|a|^2) with k from the rep's envelope; the
    value for index m is multiplied by sign_m * exp(prefactor_log[m]) * measure.
    """
    if not rep.available:
        raise RepresentationUnavailable(f"{rep.rep_kind} is not available for {rep._who()}")
    env = rep.envelope_for(det.zeta)
    k = _kernel_rate(rep.rep_kind, det.zeta)
    mm = det.m_max

    def integrand(z):
        u = np.abs(z) ** 2
        return laguerre_seq(mm, lag_scale * u) * (np.exp(-k * u) * rep(z))

    vals, errs = integrate_plane_batch(integrand, env, spec)
    scale = prefactor_sign * np.exp(prefactor_log) * measure
    p = (scale * vals).real
    err = np.abs(scale) * errs + np.abs((scale * vals).imag)
    return _dist(det.zeta, p, route, float(err.max()))


def _kernel_rate(rep_kind, zeta):
    from .states import route_kernel_rate

    return route_kernel_rate(rep_kind, zeta)


def _open_zeta(det, route, allow_one=True):
    z = det.zeta
    if z <= 0.0:
        raise RouteDomainError(f"{route} route needs zeta > 0 (use the fock route at zeta = 0)")
    if not allow_one and z >= 1.0:
        raise RouteDomainError(f"{route} route needs zeta < 1 (its kernel has 1/(1 - zeta))")


def pcount_cf(cf, det, spec=QuadratureSpec()):
    """p(m) = (1/zeta) int d^2l/pi exp(-(2 - zeta)|l|^2 / (2 zeta)) L_m(|l|^2 / zeta) chi(l)."""
    _require(cf, "CF")
    _open_zeta(det, "cf")
    z = det.zeta
    m = np.arange(det.m_max + 1)
    return _quad_route(cf, det, spec, "cf", 1 / z, np.full(m.shape, -math.log(z)), 1.0, 1.0)


def pcount_wigner(w, det, spec=QuadratureSpec()):
    """p(m) = 2(-zeta)^m / (2 - zeta)^(m+1) int d^2a exp(-2 zeta|a|^2/(2 - zeta)) L_m(4|a|^2/(2 - zeta)) W(a)."""
    _require(w, "Wigner")
    _open_zeta(det, "wigner")
    z = det.zeta
    m = np.arange(det.m_max + 1)
    logp = math.log(2) + m * math.log(z) - (m + 1) * math.log(2 - z)
    return _quad_route(w, det, spec, "wigner", 4 / (2 - z), logp, (-1.0) ** m, math.pi)


def pcount_q(q, det, spec=QuadratureSpec()):
    """p(m) = (-zeta)^m / (1 - zeta)^(m+1) int d^2a exp(-zeta|a|^2/(1 - zeta)) L_m(|a|^2/(1 - zeta)) Q(a)."""
    _require(q, "Q")
    _open_zeta(det, "q", allow_one=False)
    z = det.zeta
    m = np.arange(det.m_max + 1)
    logp = m * math.log(z) - (m + 1) * math.log1p(-z)
    return _quad_route(q, det, spec, "q", 1 / (1 - z), logp, (-1.0) ** m, math.pi)


def pcount_p(p_rep, det, spec=QuadratureSpec()):
    """p(m) = (zeta^m / m!) int d^2a |a|^(2m) exp(-zeta|a|^2) P(a).

    A point-mass P (coherent state) is integrated exactly.
    """
    _require(p_rep, "P")
    z = det.zeta
    m = np.arange(det.m_max + 1)
    if p_rep.delta_at is not None:
        return closed_coherent(p_rep.delta_at, det, route="p")
    if not p_rep.available:
        raise RepresentationUnavailable(f"P is not a regular function for {p_rep._who()}")
    _open_zeta(det, "p")
    env = p_rep.envelope_for(z)
    logfact = gammaln(m + 1)

    def integrand(a):
        u = np.abs(a) ** 2
        mm = m.reshape((-1,) + (1,) * u.ndim)
        powers = np.exp(xlogy(mm, z * u) - logfact.reshape(mm.shape))
        return powers * (np.exp(-z * u) * p_rep(a))

    vals, errs = integrate_plane_batch(integrand, env, spec)
    p = math.pi * vals.real
    err = math.pi * errs + math.pi * np.abs(vals.imag)
    return _dist(z, p, "p", float(err.max()))


def closed_coherent(beta, det, route="closed"):
    """Poisson distribution with mean zeta |beta|^2."""
    mu = det.zeta * abs(complex(beta)) ** 2
    m = np.arange(det.m_max + 1)
    return _dist(det.zeta, stats.poisson.pmf(m, mu), route, 0.0)


def closed_squeezed(r, det):
    """Squeezed vacuum in closed form.

    p(m) = (2AC)^m K_m(y) / (zeta (B^2 - 4C^2)^(m + 1/2)) with
    A = 1/zeta, B = 1/zeta + sinh^2 r, C = sinh(2r)/4 and y = (1 - zeta) tanh r,
    K_m being the real Legendre kernel.  y is formed directly so that odd
    counts vanish exactly at zeta = 1.
    """
    if r < 0:
        raise ValueError("squeeze parameter must be nonnegative")
    z = det.zeta
    if z <= 0:
        raise RouteDomainError("closed squeezed form needs zeta > 0 (use the fock route at zeta = 0)")
    m = np.arange(det.m_max + 1)
    if r == 0:
        return _dist(z, (m == 0).astype(float), "closed", 0.0)
    sh = math.sinh(r)
    twoac = math.sinh(2 * r) / (2 * z)
    disc = ((2 - z) * z * sh * sh + 1) / (z * z)
    y = (1 - z) * math.tanh(r)
    p = np.array([twoac**k * legendre_kernel(k, y) / disc ** (k + 0.5) for k in m]) / z
    return _dist(z, p, "closed", 0.0)


def squeezed_c14_complex(r, zeta, m):
    """Squeezed-vacuum p(m) written with the Legendre polynomial at y / sqrt(y^2 - 1).

    Evaluated in principal-branch complex arithmetic for 0 <= y < 1.  Returns
    a complex number; its imaginary part measures the branch ambiguity.
    """
    y = complex((1 - zeta) * math.tanh(r))
    s = np.sqrt(y * y - 1)
    x = y / s
    leg = np.polynomial.legendre.legval(x, [0] * m + [1])
    num = zeta**m / math.cosh(r) * math.tanh(r) ** m
    return complex(num / ((y * y - 1) ** (m / 2) * np.sqrt(1 - y * y)) * leg)


def thinned_tail(diag, zeta, m_max):
    """Mass and first moment of the counts above ``m_max``.

    Returns ``(sum_{m > m_max} p(m), sum_{m > m_max} m p(m))`` computed from
    the Fock diagonal, with the diagonal's own truncation tail added to the
    mass.
    """
    rho = np.asarray(diag.entries)
    n = np.arange(len(rho))
    mass = float(rho @ stats.binom.sf(m_max, n, zeta)) + diag.truncation_tail
    m = np.arange(m_max + 1)
    head_moment = (m[:, None] * stats.binom.pmf(m[:, None], n[None, :], zeta)).sum(axis=0)
    moment = float(rho @ (n * zeta - head_moment))
    return mass, max(moment, 0.0)


ROUTES = ("cf", "wigner", "q", "p", "fock", "closed")


def compute(state, route, det, spec=QuadratureSpec(), tail_bound=1e-12):
    """Dispatch a route by name for a catalog state."""
    from .states import density_diagonal, make_representations

    if route == "fock":
        return pcount_fock(density_diagonal(state, tail_bound), det)
    if route == "closed":
        if state.kind == "coherent":
            return closed_coherent(state.beta, det)
        if state.kind == "squeezed_vacuum":
            return closed_squeezed(state.r, det)
        raise RouteDomainError(f"no closed form for {state.kind} states")
    reps = make_representations(state)
    if route == "cf":
        return pcount_cf(reps["CF"], det, spec)
    if route == "wigner":
        return pcount_wigner(reps["Wigner"], det, spec)
    if route == "q":
        return pcount_q(reps["Q"], det, spec)
    if route == "p":
        return pcount_p(reps["P"], det, spec)
    raise ValueError(f"unknown route {route!r}")
