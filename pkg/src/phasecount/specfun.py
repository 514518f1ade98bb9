"""Special-function kernels used by the photocount routes.

Laguerre and Legendre polynomials are evaluated by their three-term
recurrences. The two-variable Hermite polynomial uses the explicit
finite sum belonging to the generating function

    exp(-t s + x t + y s) = sum_{m,n} H_{m,n}(x, y) t^m s^n / (m! n!)

so that L_m(x y) = (-1)^m H_{m,m}(x, y) / m!.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.special import gammaln

MAX_DEGREE = 60


class DegreeError(ValueError):
    """Requested polynomial degree exceeds the configured bound."""


class DomainError(ValueError):
    """Argument lies outside the domain where a formula is defined."""


def _check_degree(m, max_degree):
    if m < 0:
        raise ValueError(f"degree must be nonnegative, got {m}")
    if m > max_degree:
        raise DegreeError(f"degree {m} exceeds max_degree={max_degree}")


def laguerre_seq(m_max, x, max_degree=MAX_DEGREE):
    """Return ``[L_0(x), ..., L_{m_max}(x)]``.

    ``x`` may be a scalar or an array; the result then has shape
    ``(m_max + 1,) + x.shape``.
    """
    _check_degree(m_max, max_degree)
    x = np.asarray(x, dtype=float)
    out = np.empty((m_max + 1,) + x.shape)
    out[0] = 1.0
    if m_max >= 1:
        out[1] = 1.0 - x
    for k in range(1, m_max):
        out[k + 1] = ((2 * k + 1 - x) * out[k] - k * out[k - 1]) / (k + 1)
    return out


def legendre_seq(m_max, x, max_degree=MAX_DEGREE):
    """Return ``[P_0(x), ..., P_{m_max}(x)]`` (array-broadcasting like laguerre_seq)."""
    _check_degree(m_max, max_degree)
    x = np.asarray(x, dtype=float)
    out = np.empty((m_max + 1,) + x.shape)
    out[0] = 1.0
    if m_max >= 1:
        out[1] = x
    for k in range(1, m_max):
        out[k + 1] = ((2 * k + 1) * x * out[k] - k * out[k - 1]) / (k + 1)
    return out


def _legendre_coeffs(m):
    # m! / (4^l l!^2 (m-2l)!) for l = 0..m//2
    l = np.arange(m // 2 + 1)
    logc = gammaln(m + 1) - l * math.log(4.0) - 2 * gammaln(l + 1) - gammaln(m - 2 * l + 1)
    return np.exp(logc)


def legendre_sum_form(m, x):
    """Legendre polynomial from the sum  x^m sum_l c_l (1 - 1/x^2)^l."""
    if m > 0 and x == 0:
        raise DomainError("sum form has 1/x^2; use legendre_seq at x = 0")
    if m == 0:
        return 1.0
    c = _legendre_coeffs(m)
    t = 1.0 - 1.0 / (x * x)
    return float(x**m * np.sum(c * t ** np.arange(len(c))))


def legendre_kernel(m, y):
    """Real polynomial K_m(y) = sum_l c_l y^(m-2l).

    For y > 1 this equals P_m(y / sqrt(y^2 - 1)) (y^2 - 1)^(m/2); unlike that
    expression it needs no branch choice for |y| < 1.
    """
    c = _legendre_coeffs(m)
    powers = m - 2 * np.arange(len(c))
    return float(np.sum(c * float(y) ** powers))


def hermite2(m, n, x, y, max_degree=MAX_DEGREE):
    """Two-variable Hermite polynomial H_{m,n}(x, y) for complex arguments."""
    _check_degree(m, max_degree)
    _check_degree(n, max_degree)
    k = np.arange(min(m, n) + 1)
    logc = gammaln(m + 1) + gammaln(n + 1) - gammaln(k + 1) - gammaln(m - k + 1) - gammaln(n - k + 1)
    x = complex(x)
    y = complex(y)
    terms = (-1.0) ** k * np.exp(logc) * x ** (m - k) * y ** (n - k)
    return complex(np.sum(terms))


def hermite_shift_sum(m, n, alpha, x, y, terms):
    """Partial sum  sum_{l < terms} alpha^l / l! H_{m+l, n+l}(x, y).

    Degrees here run past MAX_DEGREE by design; coefficients stay in log
    space until the final product.
    """
    if abs(alpha) >= 1:
        raise DomainError(f"|alpha| must be < 1, got {alpha}")
    if terms < 1:
        raise ValueError("terms must be positive")
    if alpha == 0:
        return hermite2(m, n, x, y)
    x = complex(x)
    y = complex(y)
    l = np.arange(terms)[:, None]
    k = np.arange(min(m, n) + terms)[None, :]
    valid = k <= np.minimum(m, n) + l
    kk = np.where(valid, k, 0)
    logc = (l * math.log(abs(alpha)) - gammaln(l + 1)
            + gammaln(m + l + 1) + gammaln(n + l + 1)
            - gammaln(kk + 1) - gammaln(m + l - kk + 1) - gammaln(n + l - kk + 1))
    sign = np.where((kk + (l if alpha < 0 else 0)) % 2, -1.0, 1.0)
    terms_ = np.where(valid, sign * np.exp(logc) * x ** (m + l - kk) * y ** (n + l - kk), 0)
    # fixed order: inner sum over k, then over l
    return complex(np.sum(np.sum(terms_, axis=1)))


def hermite_shift_closed(m, n, alpha, x, y):
    """Closed form of the shift sum:
    exp(a x y / (a + 1)) (a + 1)^(-(m+n+2)/2) H_{m,n}(x / sqrt(a + 1), y / sqrt(a + 1)).
    """
    if alpha <= -1:
        raise DomainError("alpha + 1 must be positive")
    s = math.sqrt(alpha + 1.0)
    x = complex(x)
    y = complex(y)
    return (np.exp(alpha * x * y / (alpha + 1.0)) * (alpha + 1.0) ** (-(m + n + 2) / 2)
            * hermite2(m, n, x / s, y / s, max_degree=max(m, n)))
