"""Phase-plane integrals with a Gaussian envelope.

Everything here computes  I = int d^2 lam / pi  f(lam).  With u = |lam|^2
the measure becomes (1 / 2 pi) d theta du, so the radial part is handled by
Gauss-Laguerre in u and the angular part by the periodic trapezoid rule.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
import math
from typing import Callable, Optional

import numpy as np
from scipy.special import roots_laguerre

from .specfun import DomainError, legendre_kernel


class DivergentIntegralError(ValueError):
    """The Gaussian integral does not converge for the given parameters."""


class IntegrandDomainError(ArithmeticError):
    """The integrand returned a non-finite value at a quadrature node."""

    def __init__(self, node, value):
        super().__init__(f"non-finite integrand value {value!r} at node {node!r}")
        self.node = node
        self.value = value


@dataclass(frozen=True)
class GaussianEnvelope:
    """Decay bound |f(rho e^{i theta})| <~ poly(rho) exp(-c_min rho^2).

    ``c_min`` is the worst-case quadratic rate over all directions.  An
    integrand that decays like exp(-(v - v0)^T M (v - v0)), with v = (Re, Im),
    may also pass ``form=M`` and ``center=v0``; the nodes are then laid out
    in coordinates where that Gaussian is isotropic and centred, so
    polynomial-times-Gaussian integrands are integrated almost exactly.
    """

    c_min: float
    form: Optional[np.ndarray] = None
    center: complex = 0j

    def __post_init__(self):
        if not self.c_min > 0:
            raise DivergentIntegralError(f"envelope rate must be positive, got {self.c_min}")
        if self.form is not None:
            m = np.asarray(self.form, dtype=float)
            if m.shape != (2, 2) or not np.allclose(m, m.T):
                raise ValueError("form must be a symmetric 2x2 matrix")
            if np.linalg.eigvalsh(m)[0] < self.c_min * (1 - 1e-12):
                raise DivergentIntegralError("form has a direction decaying slower than c_min")
            object.__setattr__(self, "form", m)

    @classmethod
    def from_form(cls, form, center=0j):
        form = np.asarray(form, dtype=float)
        return cls(float(np.linalg.eigvalsh(form)[0]), form, complex(center))

    def whitening(self):
        """Return (T, det T) with T = M^(-1/2)."""
        m = self.form if self.form is not None else self.c_min * np.eye(2)
        evals, evecs = np.linalg.eigh(m)
        t = evecs @ np.diag(evals**-0.5) @ evecs.T
        return t, float(np.prod(evals**-0.5))


@dataclass(frozen=True)
class QuadratureSpec:
    radial_nodes: int = 80
    angular_nodes: int = 64
    refine_factor: int = 2

    def __post_init__(self):
        if self.radial_nodes < 8:
            raise ValueError("radial_nodes must be >= 8")
        if self.angular_nodes < 2 or self.angular_nodes % 2:
            raise ValueError("angular_nodes must be a positive even integer")
        if self.refine_factor < 1:
            raise ValueError("refine_factor must be positive")

    def refined(self):
        k = self.refine_factor
        return QuadratureSpec(self.radial_nodes * k, self.angular_nodes * k, k)


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    error_estimate: float


@lru_cache(maxsize=16)
def _laguerre_rule(n):
    # weights multiplied by e^u, dropping nodes whose weight underflows
    u, w = roots_laguerre(n)
    keep = w > 0
    u, w = u[keep], w[keep]
    scaled = np.exp(np.log(w) + u)
    u.setflags(write=False)
    scaled.setflags(write=False)
    return u, scaled


def _nodes(env, spec):
    u, wu = _laguerre_rule(spec.radial_nodes)
    phi = 2 * np.pi * np.arange(spec.angular_nodes) / spec.angular_nodes
    t, det = env.whitening()
    r = np.sqrt(u)
    wx = np.cos(phi)[:, None] * r[None, :]
    wy = np.sin(phi)[:, None] * r[None, :]
    # shape (angular, radial)
    pts = (t[0, 0] * wx + t[0, 1] * wy) + 1j * (t[1, 0] * wx + t[1, 1] * wy) + env.center
    ww = np.broadcast_to(wu * det / spec.angular_nodes, pts.shape)
    return pts, ww


_ROUNDOFF = 16 * np.finfo(float).eps


def _apply(f, env, spec):
    pts, ww = _nodes(env, spec)
    vals = np.asarray(f(pts))
    if not np.all(np.isfinite(vals)):
        bad = np.argwhere(~np.isfinite(vals))[0]
        raise IntegrandDomainError(complex(pts[tuple(bad[-2:])]), vals[tuple(bad)])
    terms = vals * ww
    # fixed reduction order: radial first, then angular
    total = np.sum(np.sum(terms, axis=-1), axis=-1)
    magnitude = np.sum(np.sum(np.abs(terms), axis=-1), axis=-1)
    return total, magnitude


def integrate_plane_batch(f, env, spec=QuadratureSpec()):
    """Integrate a vectorised integrand returning shape ``(..., A, R)``.

    ``f`` receives the node array (shape ``(A, R)``, complex) and may return
    extra leading axes, e.g. one row per photocount index.  Returns
    ``(values, error_estimates)`` with the leading shape of ``f``'s output.
    """
    coarse, _ = _apply(f, env, spec)
    fine, magnitude = _apply(f, env, spec.refined())
    return coarse, np.abs(coarse - fine) + _ROUNDOFF * magnitude


def integrate_plane(f, env, spec=QuadratureSpec()):
    """Approximate  int d^2 lam / pi  f(lam)  for a vectorised scalar integrand.

    The value is computed with ``spec``; the error estimate is the distance to
    the same rule with node counts multiplied by ``spec.refine_factor``, plus
    a floating-point bound proportional to the sum of |terms| (cancellation
    in the weighted sum is otherwise invisible to refinement).
    """
    value, err = integrate_plane_batch(f, env, spec)
    return QuadratureResult(complex(value), float(err))


def laguerre_gauss_closed(m, A, B, C):
    """int d^2a/pi exp(-B|a|^2 + C a - C* a*) L_m(A |a|^2) in closed form.

    Written as the polynomial  sum_k binom(m,k) x^k (B-A)^(m-k) / k!  with
    x = A|C|^2/B, which is the closed form with its A -> B limit built in.
    """
    if not B > 0:
        raise DivergentIntegralError(f"B must be positive, got {B}")
    c2 = abs(complex(C)) ** 2
    x = A * c2 / B
    k = np.arange(m + 1)
    logbinom = math.lgamma(m + 1) - np.array([math.lgamma(i + 1) + math.lgamma(m - i + 1) for i in k])
    coef = np.exp(logbinom - np.array([math.lgamma(i + 1) for i in k]))
    poly = float(np.sum(coef * x**k * float(B - A) ** (m - k)))
    return math.exp(-c2 / B) * poly / B ** (m + 1)


def legendre_gauss_closed(m, A, B, C):
    """int d^2l/pi exp(-B|l|^2 + C l^2 + C l*^2) L_m(A |l|^2) for real A, C.

    Equals (2AC)^m K_m(y) / (B^2 - 4C^2)^(m + 1/2) with
    y = (B^2 - 4C^2 - AB) / (2AC) and K_m the real Legendre kernel.
    """
    disc = B * B - 4 * C * C
    if not (B > 0 and disc > 0):
        raise DivergentIntegralError(f"need B > 2|C|, got B={B}, C={C}")
    if C == 0:
        return laguerre_gauss_closed(m, A, B, 0.0)
    if A == 0:
        # L_m(0) = 1: plain Gaussian normalisation
        return 1.0 / math.sqrt(disc)
    twoac = 2.0 * A * C
    y = (disc - A * B) / twoac
    return twoac**m * legendre_kernel(m, y) / disc ** (m + 0.5)
