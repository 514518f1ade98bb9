"""Grids of identity checks shared by ``phasecount verify`` and the demos.

Each check returns ``(max_error, tolerance)``; errors are absolute unless
the name says otherwise.
"""
from __future__ import annotations

from fractions import Fraction
import itertools
import math

import numpy as np

from . import specfun
from .quadrature import GaussianEnvelope, QuadratureSpec, integrate_plane, laguerre_gauss_closed, legendre_gauss_closed
from .states import catalog, fourier_check, make_representations

XS = (-3.0, -1.0, 0.0, 0.5, 1.0, 2.0, 10.0)
COMPLEX_GRID = (0.7 + 0.2j, -0.4 + 0.9j, 1.1 - 0.3j, 0.25j, -0.8 - 0.5j)


def _rel(a, b):
    return abs(a - b) / max(1.0, abs(b))


def laguerre_series(m, x):
    """Explicit series in exact rational arithmetic."""
    x = Fraction(x)
    return float(sum(Fraction((-1) ** k * math.comb(m, k), math.factorial(k)) * x**k for k in range(m + 1)))


def legendre_explicit(m, x):
    x = Fraction(x)
    return float(sum(math.comb(m, k) ** 2 * (x - 1) ** (m - k) * (x + 1) ** k for k in range(m + 1)) / 2**m)


def check_recurrences():
    err = 0.0
    for m, x in itertools.product(range(13), XS):
        err = max(err, _rel(specfun.laguerre_seq(12, x)[m], laguerre_series(m, x)))
        err = max(err, _rel(specfun.legendre_seq(12, x)[m], legendre_explicit(m, x)))
    return err, 1e-12


def check_hermite_laguerre():
    err = 0.0
    for m, x, y in itertools.product(range(11), COMPLEX_GRID, COMPLEX_GRID):
        lag = np.polynomial.laguerre.lagval(x * y, [0] * m + [1])
        lhs = lag * math.factorial(m) * (-1) ** m
        err = max(err, abs(lhs - specfun.hermite2(m, m, x, y)) / max(1.0, abs(lhs)))
    return err, 1e-10


def check_legendre_sum_form():
    err = 0.0
    for m, x in itertools.product(range(11), (1.0, 1.5, 2.0, 3.3, 5.0, -1.0, -2.5, -5.0)):
        err = max(err, _rel(specfun.legendre_sum_form(m, x), specfun.legendre_seq(m, x)[m]))
    return err, 1e-12


def check_shift_sum(alphas=(-0.5, -0.25, 0.25, 0.5), terms=80):
    err = 0.0
    for (m, n), a, x, y in itertools.product(itertools.product(range(5), repeat=2), alphas, COMPLEX_GRID[:3], COMPLEX_GRID[2:]):
        closed = specfun.hermite_shift_closed(m, n, a, x, y)
        s = specfun.hermite_shift_sum(m, n, a, x, y, terms)
        err = max(err, abs(s - closed) / abs(closed))
    return err, 1e-9


def laguerre_gauss_grid():
    return [(m, a, b, c) for m in range(9) for a, b in ((0.5, 1.0), (1.0, 1.0), (2.0, 3.0), (1.0, 2.0))
            for c in (0.0, 0.5, 0.3 + 0.4j)]


def check_laguerre_gauss(spec=QuadratureSpec()):
    err = 0.0
    for m, a, b, c in laguerre_gauss_grid():
        f = lambda z: np.exp(-b * np.abs(z) ** 2 + c * z - np.conj(c) * np.conj(z)) * specfun.laguerre_seq(m, a * np.abs(z) ** 2)[m]
        res = integrate_plane(f, GaussianEnvelope(b), spec)
        err = max(err, abs(res.value - laguerre_gauss_closed(m, a, b, c)))
    return err, 1e-9


def legendre_gauss_grid():
    return [(m, a, b, c) for m in range(9) for a, b, c in
            ((1.0, 2.0, 0.25), (0.5, 1.0, 0.3), (2.0, 3.0, -0.6), (0.4, 1.5, -0.5))]


def check_legendre_gauss(spec=QuadratureSpec()):
    err = 0.0
    for m, a, b, c in legendre_gauss_grid():
        f = lambda z: np.exp(-b * np.abs(z) ** 2 + c * (z * z + np.conj(z) ** 2)) * specfun.laguerre_seq(m, a * np.abs(z) ** 2)[m]
        env = GaussianEnvelope.from_form(np.diag([b - 2 * c, b + 2 * c]))
        res = integrate_plane(f, env, spec)
        err = max(err, abs(res.value - legendre_gauss_closed(m, a, b, c)))
    return err, 1e-9


def lambda_grid():
    axis = np.linspace(-1.4, 1.4, 5)
    return [complex(x, y) for x in axis for y in axis]


def check_fourier(spec=QuadratureSpec()):
    err = 0.0
    grid = lambda_grid()
    for state in catalog().values():
        reps = make_representations(state)
        for kind in ("Wigner", "Q", "P"):
            if reps[kind].available or reps[kind].delta_at is not None:
                err = max(err, fourier_check(state, kind, grid, spec))
    return err, 1e-8


CHECKS = {
    "laguerre_legendre_recurrence_rel": check_recurrences,
    "hermite_laguerre_link_rel": check_hermite_laguerre,
    "legendre_sum_form_rel": check_legendre_sum_form,
    "hermite_shift_sum_rel": check_shift_sum,
    "laguerre_gauss_integral": check_laguerre_gauss,
    "legendre_gauss_integral": check_legendre_gauss,
    "fourier_relations": check_fourier,
}


def run_all():
    """Run every check; returns a list of dicts with name, max_error, tolerance, pass."""
    out = []
    for name, fn in CHECKS.items():
        err, tol = fn()
        out.append({"name": name, "max_error": float(err), "tolerance": tol, "pass": bool(err <= tol)})
    return out
