from fractions import Fraction
import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from phasecount import specfun
from phasecount.specfun import (
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


def laguerre_exact(m, x):
    x = Fraction(x)
    return sum(Fraction((-1) ** k * math.comb(m, k), math.factorial(k)) * x**k for k in range(m + 1))


def legendre_exact(m, x):
    x = Fraction(x)
    return sum(math.comb(m, k) ** 2 * (x - 1) ** (m - k) * (x + 1) ** k for k in range(m + 1)) / 2**m


def hermite2_from_generating_function(m, n, x, y):
    t, s = sp.symbols("t s")
    g = sp.exp(-t * s + x * t + y * s)
    return complex(sp.diff(g, t, m, s, n).subs({t: 0, s: 0}).evalf())


def test_laguerre_examples():
    np.testing.assert_array_equal(laguerre_seq(2, 0.0), [1, 1, 1])
    np.testing.assert_allclose(laguerre_seq(2, 1.0), [1, 0, -0.5], atol=1e-15)
    np.testing.assert_allclose(laguerre_seq(1, 2.0), [1, -1])


def test_legendre_examples():
    np.testing.assert_array_equal(legendre_seq(3, 1.0), [1, 1, 1, 1])
    np.testing.assert_allclose(legendre_seq(2, 0.5), [1, 0.5, -0.125])
    np.testing.assert_allclose(legendre_seq(2, 0.0), [1, 0, -0.5])


@pytest.mark.parametrize("x", [-3, -1, 0, 0.5, 1, 2, 10])
def test_recurrences_match_exact_series(x):
    lag = laguerre_seq(12, x)
    leg = legendre_seq(12, x)
    for m in range(13):
        exact_l = float(laguerre_exact(m, x))
        exact_p = float(legendre_exact(m, x))
        assert abs(lag[m] - exact_l) <= 1e-12 * max(1, abs(exact_l))
        assert abs(leg[m] - exact_p) <= 1e-12 * max(1, abs(exact_p))


def test_array_argument_broadcasts():
    x = np.array([[0.0, 1.0], [2.0, 3.0]])
    out = laguerre_seq(4, x)
    assert out.shape == (5, 2, 2)
    assert out[4, 1, 0] == pytest.approx(float(laguerre_exact(4, 2)))


def test_degree_bound():
    with pytest.raises(DegreeError):
        laguerre_seq(61, 0.3)
    with pytest.raises(DegreeError):
        legendre_seq(61, 0.3)
    with pytest.raises(DegreeError):
        hermite2(61, 0, 1, 1)
    assert laguerre_seq(80, 0.3, max_degree=80).shape == (81,)


def test_legendre_sum_form_examples():
    assert legendre_sum_form(2, 2.0) == pytest.approx(5.5, rel=1e-14)
    assert legendre_sum_form(0, 3.7) == 1
    assert legendre_sum_form(1, -1.0) == pytest.approx(-1)
    with pytest.raises(DomainError):
        legendre_sum_form(3, 0.0)


@given(m=st.integers(0, 10), x=st.floats(1, 5) | st.floats(-5, -1))
def test_legendre_sum_form_equals_recurrence(m, x):
    ref = legendre_seq(m, x)[m]
    assert legendre_sum_form(m, x) == pytest.approx(ref, rel=1e-12, abs=1e-300)


def test_legendre_kernel_examples():
    assert legendre_kernel(2, 0.0) == 0.5
    assert legendre_kernel(1, 0.0) == 0
    assert legendre_kernel(0, 9.9) == 1


@given(m=st.integers(0, 10), y=st.floats(1.001, 20))
def test_legendre_kernel_matches_legendre_form(m, y):
    expected = legendre_seq(m, y / math.sqrt(y * y - 1))[m] * (y * y - 1) ** (m / 2)
    assert legendre_kernel(m, y) == pytest.approx(expected, rel=1e-10)


def test_legendre_kernel_parity():
    for m in range(1, 12, 2):
        assert legendre_kernel(m, 0.0) == 0.0


def test_hermite2_examples():
    assert hermite2(1, 1, 2, 3) == pytest.approx(5)
    assert hermite2(0, 0, 0.3 + 2j, -7) == 1
    assert hermite2(2, 2, 2.0, 0.5) == pytest.approx(-1)


@pytest.mark.parametrize("m,n", [(0, 3), (2, 1), (3, 3), (4, 2)])
def test_hermite2_matches_generating_function(m, n):
    x, y = 0.7 - 0.3j, 1.2 + 0.5j
    assert hermite2(m, n, x, y) == pytest.approx(hermite2_from_generating_function(m, n, x, y), rel=1e-12)


cplx = st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False)


@given(m=st.integers(0, 10), x=cplx, y=cplx)
def test_hermite_laguerre_link(m, x, y):
    lag = np.polynomial.laguerre.lagval(x * y, [0] * m + [1])
    lhs = lag * math.factorial(m) * (-1) ** m
    assert abs(lhs - hermite2(m, m, x, y)) <= 1e-10 * max(1, abs(lhs))


def test_shift_sum_examples():
    assert hermite_shift_sum(0, 0, 0.0, 0.4, 2j, 5) == 1
    assert hermite_shift_sum(0, 0, 0.5, 1, 1, 60) == pytest.approx(math.exp(1 / 3) / 1.5, rel=1e-13)
    closed = 1.25 ** -1.5 * 2 / math.sqrt(1.25)
    assert hermite_shift_sum(1, 0, 0.25, 2, 0, 60) == pytest.approx(closed, rel=1e-13)
    with pytest.raises(DomainError):
        hermite_shift_sum(0, 0, 1.0, 1, 1, 10)


def test_shift_sum_term_by_term():
    # independent check of the vectorised sum against a plain loop over hermite2
    m, n, a, x, y = 2, 1, -0.4, 0.6 + 0.2j, -0.3 + 0.8j
    loop = sum(a**l / math.factorial(l) * hermite2(m + l, n + l, x, y) for l in range(25))
    assert hermite_shift_sum(m, n, a, x, y, 25) == pytest.approx(loop, rel=1e-12)


@pytest.mark.parametrize("alpha", [-0.9, -0.6, 0.5, 0.9])
def test_shift_sum_residual_decreases(alpha):
    x, y = 0.8 + 0.1j, 0.5 - 0.2j
    closed = hermite_shift_closed(1, 2, alpha, x, y)
    residuals = [abs(hermite_shift_sum(1, 2, alpha, x, y, t) - closed) / abs(closed) for t in range(5, 400, 15)]
    # past the crossover (largest residual) it decreases strictly until the roundoff floor
    start = int(np.argmax(residuals))
    above = [r for r in residuals[start:] if r > 1e-8]
    assert len(above) >= 2
    assert all(b < a for a, b in zip(above, above[1:]))
    assert residuals[-1] < 1e-8
