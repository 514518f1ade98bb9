"""Light-field states: Fock diagonals and phase-space representations.

Conventions
-----------
* CF is the symmetric-ordered characteristic function tr(rho D(lam)).
* W, Q and P are normalised against the plain measure d^2 alpha and relate
  to the CF through  chi(lam) = e^{s|lam|^2/2} int e^{lam a* - lam* a} F(a) d^2a
  with s = 0 (W), +1 (Q), -1 (P).
* Squeezed vacuum is exp(r (a^dag^2 - a^2) / 2)|0>, which has
  chi(lam) = exp(-|lam|^2 cosh(2r) / 2 + (lam^2 + lam*^2) sinh(2r) / 4).

All evaluators take complex arrays and are vectorised.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass, field
import math
from typing import Callable, Optional

import numpy as np
from scipy import stats
from scipy.special import gammaln, xlogy

from .quadrature import GaussianEnvelope, QuadratureSpec, integrate_plane
from .specfun import laguerre_seq

KINDS = ("coherent", "squeezed_vacuum", "thermal", "fock", "custom_diag")
REP_KINDS = ("CF", "Wigner", "Q", "P")
DEFAULT_TAIL = 1e-12


class RepresentationUnavailable(ValueError):
    """The requested quasi-probability is not a regular function for this state."""


class StateError(ValueError):
    pass


@dataclass(frozen=True)
class StateSpec:
    kind: str
    beta: complex = 0j
    r: float = 0.0
    nbar: float = 0.0
    n: int = 0
    diag: tuple = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise StateError(f"unknown state kind {self.kind!r}")
        if self.r < 0 or self.nbar < 0 or self.n < 0:
            raise StateError("r, nbar and n must be nonnegative")
        if self.kind == "custom_diag":
            d = np.asarray(self.diag, dtype=float)
            if d.ndim != 1 or len(d) == 0:
                raise StateError("custom diagonal must be a nonempty list")
            if np.any(d < 0) or not np.all(np.isfinite(d)):
                raise StateError("custom diagonal entries must be finite and >= 0")
            if d.sum() > 1 + 1e-12:
                raise StateError(f"custom diagonal sums to {d.sum()!r} > 1")
            object.__setattr__(self, "diag", tuple(float(v) for v in d))

    @property
    def mean_photons(self):
        if self.kind == "coherent":
            return abs(self.beta) ** 2
        if self.kind == "squeezed_vacuum":
            return math.sinh(self.r) ** 2
        if self.kind == "thermal":
            return self.nbar
        if self.kind == "fock":
            return float(self.n)
        return float(np.dot(np.arange(len(self.diag)), self.diag))

    def label(self):
        if self.kind == "coherent":
            return f"coherent:re={self.beta.real!r},im={self.beta.imag!r}"
        if self.kind == "squeezed_vacuum":
            return f"squeezed:r={self.r!r}"
        if self.kind == "thermal":
            return f"thermal:nbar={self.nbar!r}"
        if self.kind == "fock":
            return f"fock:n={self.n}"
        return f"diag:[{len(self.diag)} entries]"


def coherent(beta):
    return StateSpec("coherent", beta=complex(beta))


def squeezed(r):
    return StateSpec("squeezed_vacuum", r=float(r))


def thermal(nbar):
    return StateSpec("thermal", nbar=float(nbar))


def fock(n):
    return StateSpec("fock", n=int(n))


def custom(diag):
    return StateSpec("custom_diag", diag=tuple(diag))


def load_diag_csv(path):
    """Read a custom Fock diagonal: one rho_nn per line, index implicit from 0."""
    values = []
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            cells = [c.strip() for c in row if c.strip()]
            if not cells:
                continue
            if len(cells) != 1:
                raise StateError(f"{path}:{lineno}: expected one value per line, got {row!r}")
            try:
                values.append(float(cells[0]))
            except ValueError:
                raise StateError(f"{path}:{lineno}: not a number: {cells[0]!r}") from None
    return custom(values)


# -- Fock diagonal ------------------------------------------------------------

@dataclass(frozen=True)
class DensityDiagonal:
    entries: np.ndarray
    truncation_tail: float

    def __post_init__(self):
        e = np.asarray(self.entries, dtype=float)
        if np.any(e < 0):
            raise StateError("density diagonal has negative entries")
        total = e.sum() + self.truncation_tail
        if abs(total - 1) > 1e-10:
            raise StateError(f"diagonal plus tail sums to {total!r}")
        e.setflags(write=False)
        object.__setattr__(self, "entries", e)


def density_diagonal(state, tail_bound=DEFAULT_TAIL):
    """Photon-number distribution rho_nn, truncated once the tail is below ``tail_bound``."""
    if not 0 < tail_bound <= 1e-6:
        raise ValueError("tail_bound must lie in (0, 1e-6]")
    kind = state.kind
    if kind == "fock":
        e = np.zeros(state.n + 1)
        e[state.n] = 1.0
        return DensityDiagonal(e, 0.0)
    if kind == "custom_diag":
        e = np.array(state.diag)
        return DensityDiagonal(e, max(0.0, 1.0 - e.sum()))
    if kind == "coherent":
        mu = abs(state.beta) ** 2
        if mu == 0:
            return DensityDiagonal(np.array([1.0]), 0.0)
        n = int(mu)
        while stats.poisson.sf(n, mu) > tail_bound:
            n += 1
        e = stats.poisson.pmf(np.arange(n + 1), mu)
        return DensityDiagonal(e, float(stats.poisson.sf(n, mu)))
    if kind == "thermal":
        nb = state.nbar
        if nb == 0:
            return DensityDiagonal(np.array([1.0]), 0.0)
        q = nb / (nb + 1)
        # tail after index N is q^(N+1)
        n = max(0, math.ceil(math.log(tail_bound) / math.log(q)) - 1)
        k = np.arange(n + 1)
        e = np.exp(k * math.log(q)) / (nb + 1)
        return DensityDiagonal(e, q ** (n + 1))
    # squeezed vacuum: rho_{2k} = sech r binom(2k, k) (tanh r / 2)^{2k}
    t = math.tanh(state.r)
    if t == 0:
        return DensityDiagonal(np.array([1.0]), 0.0)
    sech = 1 / math.cosh(state.r)
    k = 0
    entries = [sech]
    while True:
        nxt = entries[-1] * (2 * k + 1) / (2 * k + 2) * t * t
        # remaining terms shrink at least geometrically with ratio t^2
        tail = nxt / (1 - t * t)
        if tail <= tail_bound:
            break
        entries.append(nxt)
        k += 1
    e = np.zeros(2 * len(entries) - 1)
    e[::2] = entries
    return DensityDiagonal(e, min(tail, max(0.0, 1.0 - e.sum())))


# -- phase-space representations ----------------------------------------------

@dataclass(frozen=True)
class PhaseSpaceRep:
    """One quasi-probability representation of a state.

    ``form`` and ``center`` describe the Gaussian factor of ``evaluate`` as
    exp(-(v - v0)^T form (v - v0)) in (Re, Im) coordinates.  ``delta_at`` is
    set for a P function that is a point mass.
    """

    rep_kind: str
    evaluate: Optional[Callable] = None
    form: Optional[np.ndarray] = None
    center: complex = 0j
    available: bool = True
    delta_at: Optional[complex] = None
    state: Optional[StateSpec] = field(default=None, compare=False)

    def __call__(self, z):
        if not self.available or self.evaluate is None:
            raise RepresentationUnavailable(f"{self.rep_kind} is not a regular function for {self._who()}")
        return self.evaluate(np.asarray(z))

    def _who(self):
        return self.state.label() if self.state is not None else "this state"

    def envelope_for(self, zeta=None, kernel_rate=None):
        """Envelope of ``kernel(|a|^2) * evaluate(a)``.

        The route kernel contributes exp(-kernel_rate |a|^2); when
        ``kernel_rate`` is None it is looked up from the route that consumes
        this representation at efficiency ``zeta``.
        """
        if self.form is None:
            raise RepresentationUnavailable(f"{self.rep_kind} has no Gaussian envelope")
        if kernel_rate is None:
            kernel_rate = route_kernel_rate(self.rep_kind, zeta)
        m = self.form + kernel_rate * np.eye(2)
        v0 = np.array([self.center.real, self.center.imag])
        c = np.linalg.solve(m, self.form @ v0)
        return GaussianEnvelope.from_form(m, complex(c[0], c[1]))


def route_kernel_rate(rep_kind, zeta):
    """Quadratic decay rate of the Laguerre-Gaussian kernel in each route."""
    if rep_kind == "CF":
        return (2 - zeta) / (2 * zeta)
    if rep_kind == "Wigner":
        return 2 * zeta / (2 - zeta)
    if rep_kind == "Q":
        return zeta / (1 - zeta)
    if rep_kind == "P":
        return zeta
    raise ValueError(rep_kind)


def _iso(c):
    return c * np.eye(2)


def _gaussian_reps(state, a, b):
    """Reps of a centred Gaussian state with CF exp(-a|l|^2 + b Re(l^2)).

    Inverting the Fourier pair gives
    F(x + iy) = exp(-x^2/(a'+b) - y^2/(a'-b)) / (pi sqrt(a'^2 - b^2))
    with a' = a (W), a + 1/2 (Q), a - 1/2 (P).
    """

    def cf(z):
        return np.exp(-a * np.abs(z) ** 2 + b * (z * z).real)

    out = {"CF": PhaseSpaceRep("CF", cf, np.diag([a - b, a + b]), state=state)}
    for kind, ap in (("Wigner", a), ("Q", a + 0.5), ("P", a - 0.5)):
        if ap - abs(b) <= 1e-15:
            out[kind] = PhaseSpaceRep(kind, available=False, state=state)
            continue
        sx, sy = ap + b, ap - b
        norm = 1.0 / (math.pi * math.sqrt(sx * sy))

        def f(z, sx=sx, sy=sy, norm=norm):
            return norm * np.exp(-z.real**2 / sx - z.imag**2 / sy) + 0j

        out[kind] = PhaseSpaceRep(kind, f, np.diag([1 / sx, 1 / sy]), state=state)
    return out


def _diag_reps(state, rho):
    """Reps of a Fock-diagonal state from finite Laguerre sums."""
    rho = np.asarray(rho, dtype=float)
    nmax = len(rho) - 1
    sign = (-1.0) ** np.arange(nmax + 1)
    logfact = gammaln(np.arange(nmax + 1) + 1)

    def _lsum(x, coeffs):
        lag = laguerre_seq(nmax, x, max_degree=max(nmax, 60))
        return np.tensordot(coeffs, lag, axes=1)

    def cf(z):
        u = np.abs(z) ** 2
        return np.exp(-u / 2) * _lsum(u, rho) + 0j

    def wigner(z):
        u = np.abs(z) ** 2
        return 2 / np.pi * np.exp(-2 * u) * _lsum(4 * u, rho * sign) + 0j

    def q(z):
        u = np.abs(z) ** 2
        n = np.arange(nmax + 1).reshape((-1,) + (1,) * u.ndim)
        weights = rho.reshape(n.shape)
        terms = weights * np.exp(xlogy(n, u) - u - logfact.reshape(n.shape))
        return terms.sum(axis=0) / np.pi + 0j

    p_ok = state.kind == "thermal"
    return {
        "CF": PhaseSpaceRep("CF", cf, _iso(0.5), state=state),
        "Wigner": PhaseSpaceRep("Wigner", wigner, _iso(2.0), state=state),
        "Q": PhaseSpaceRep("Q", q, _iso(1.0), state=state),
        "P": PhaseSpaceRep("P", available=p_ok, state=state),
    }


def make_representations(state):
    """Return ``{rep_kind: PhaseSpaceRep}`` for the CF, Wigner, Q and P functions."""
    kind = state.kind
    if kind == "coherent":
        beta = complex(state.beta)
        v0 = beta

        def cf(z):
            return np.exp(-0.5 * np.abs(z) ** 2 + z * np.conj(beta) - np.conj(z) * beta)

        def wigner(z):
            return 2 / np.pi * np.exp(-2 * np.abs(z - beta) ** 2) + 0j

        def q(z):
            return np.exp(-np.abs(z - beta) ** 2) / np.pi + 0j

        return {
            "CF": PhaseSpaceRep("CF", cf, _iso(0.5), state=state),
            "Wigner": PhaseSpaceRep("Wigner", wigner, _iso(2.0), v0, state=state),
            "Q": PhaseSpaceRep("Q", q, _iso(1.0), v0, state=state),
            "P": PhaseSpaceRep("P", delta_at=beta, state=state),
        }
    if kind == "squeezed_vacuum":
        r = state.r
        return _gaussian_reps(state, math.cosh(2 * r) / 2, math.sinh(2 * r) / 2)
    if kind == "thermal":
        return _gaussian_reps(state, state.nbar + 0.5, 0.0)
    if kind == "fock":
        rho = np.zeros(state.n + 1)
        rho[state.n] = 1.0
        return _diag_reps(state, rho)
    return _diag_reps(state, state.diag)


def fourier_check(state, rep_kind, grid, spec=QuadratureSpec()):
    """Max |RHS - CF(lam)| over ``grid`` for the CF <-> W/Q/P Fourier relations.

    RHS = e^{s|lam|^2/2} int e^{lam a* - lam* a} F(a) d^2a with s = 0, 1, -1
    for W, Q, P.  The plain d^2a measure is pi times the d^2a/pi that the
    quadrature computes.
    """
    reps = make_representations(state)
    if rep_kind not in ("Wigner", "Q", "P"):
        raise ValueError(f"rep_kind must be Wigner, Q or P, got {rep_kind!r}")
    rep = reps[rep_kind]
    cf = reps["CF"]
    s = {"Wigner": 0.0, "Q": 1.0, "P": -1.0}[rep_kind]
    worst = 0.0
    for lam in np.atleast_1d(np.asarray(grid, dtype=complex)):
        if rep.delta_at is not None:
            b = rep.delta_at
            integral = np.exp(lam * np.conj(b) - np.conj(lam) * b)
        else:
            if not rep.available:
                raise RepresentationUnavailable(f"{rep_kind} is not a regular function for {state.label()}")
            env = rep.envelope_for(kernel_rate=0.0)
            res = integrate_plane(lambda a, lam=lam: np.exp(lam * np.conj(a) - np.conj(lam) * a) * rep(a), env, spec)
            integral = np.pi * res.value
        rhs = np.exp(s * abs(lam) ** 2 / 2) * integral
        worst = max(worst, abs(rhs - complex(cf(np.array([lam]))[0])))
    return float(worst)


def catalog():
    """States used by the cross-validation suites, keyed by a short name."""
    return {
        "vacuum": coherent(0),
        "coherent_0.5": coherent(0.5),
        "coherent_1": coherent(1.0),
        "coherent_2": coherent(2.0),
        "coherent_complex": coherent(0.8 - 0.6j),
        "squeezed_0.3": squeezed(0.3),
        "squeezed_1": squeezed(1.0),
        "thermal_1": thermal(1.0),
        "thermal_2": thermal(2.0),
        "fock_1": fock(1),
        "fock_2": fock(2),
        "fock_3": fock(3),
        "custom": custom([0.1, 0.2, 0.3, 0.25, 0.15]),
    }
