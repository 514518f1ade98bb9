import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from phasecount.quadrature import integrate_plane
from phasecount.states import (
    RepresentationUnavailable,
    StateError,
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

PTS = np.array([0, 0.3 + 0.1j, -0.7 + 0.5j, 1.2j, 1.5 - 0.9j])
SMALL_GRID = [complex(x, y) for x in (-1, 0, 1) for y in (-1, 0.5)]


def test_vacuum_representations():
    reps = make_representations(coherent(0))
    u = np.abs(PTS) ** 2
    np.testing.assert_allclose(reps["CF"](PTS), np.exp(-u / 2), rtol=1e-15)
    np.testing.assert_allclose(reps["Wigner"](PTS), 2 / np.pi * np.exp(-2 * u), rtol=1e-15)
    np.testing.assert_allclose(reps["Q"](PTS), np.exp(-u) / np.pi, rtol=1e-15)
    assert reps["P"].delta_at == 0


def test_unsqueezed_is_vacuum():
    vac = make_representations(coherent(0))
    sq = make_representations(squeezed(0.0))
    for kind in ("CF", "Wigner", "Q"):
        np.testing.assert_allclose(sq[kind](PTS), vac[kind](PTS), rtol=1e-14)


def test_thermal_cf():
    cf = make_representations(thermal(1.0))["CF"]
    np.testing.assert_allclose(cf(PTS), np.exp(-1.5 * np.abs(PTS) ** 2), rtol=1e-14)


def test_single_photon_wigner():
    u = np.abs(PTS) ** 2
    w = make_representations(fock(1))["Wigner"]
    np.testing.assert_allclose(w(PTS), 2 / np.pi * np.exp(-2 * u) * (4 * u - 1), rtol=1e-13, atol=1e-16)


def test_p_availability():
    assert not make_representations(squeezed(0.5))["P"].available
    assert not make_representations(fock(2))["P"].available
    assert not make_representations(custom([0.5, 0.5]))["P"].available
    assert make_representations(thermal(2.0))["P"].available
    with pytest.raises(RepresentationUnavailable):
        make_representations(fock(1))["P"](PTS)


@pytest.mark.parametrize("name", list(catalog()))
def test_cf_hermiticity(name):
    cf = make_representations(catalog()[name])["CF"]
    np.testing.assert_allclose(cf(-PTS), np.conj(cf(PTS)), rtol=1e-13, atol=1e-16)
    assert cf(np.array([0j]))[0] == pytest.approx(1, abs=1e-14)


@pytest.mark.parametrize("name", list(catalog()))
def test_quasiprobabilities_normalised(name):
    reps = make_representations(catalog()[name])
    for kind in ("Wigner", "Q", "P"):
        rep = reps[kind]
        if not rep.available or rep.delta_at is not None:
            continue
        total = math.pi * integrate_plane(rep, rep.envelope_for(kernel_rate=0.0)).value
        assert total == pytest.approx(1, abs=1e-8)


@given(st.sampled_from(list(catalog().values())),
       st.complex_numbers(max_magnitude=4, allow_nan=False, allow_infinity=False))
def test_q_bounded(state, z):
    q = make_representations(state)["Q"](np.array([z]))[0]
    assert abs(q.imag) == 0
    assert -1e-16 <= q.real <= 1 / np.pi + 1e-15


def test_fourier_examples():
    assert fourier_check(coherent(0), "Wigner", SMALL_GRID) <= 1e-9
    assert fourier_check(thermal(2.0), "Q", SMALL_GRID) <= 1e-9
    assert fourier_check(fock(1), "Wigner", SMALL_GRID) <= 1e-8
    with pytest.raises(RepresentationUnavailable):
        fourier_check(squeezed(1.0), "P", SMALL_GRID)
    with pytest.raises(ValueError):
        fourier_check(thermal(1.0), "CF", SMALL_GRID)


def test_fourier_detects_wrong_convention():
    # a Wigner function with the squeeze axis rotated by 90 degrees must fail the check
    good = fourier_check(squeezed(0.5), "Wigner", SMALL_GRID)
    reps = make_representations(squeezed(0.5))
    w = reps["Wigner"]
    bad = w.__class__("Wigner", lambda z: w(1j * z), w.form[::-1, ::-1], state=w.state)
    cf = reps["CF"]
    lam = 0.8 + 0.3j
    env = bad.envelope_for(kernel_rate=0.0)
    rhs = math.pi * integrate_plane(lambda a: np.exp(lam * np.conj(a) - np.conj(lam) * a) * bad(a), env).value
    assert good < 1e-12
    assert abs(rhs - cf(np.array([lam]))[0]) > 1e-3


def test_density_examples():
    d = density_diagonal(fock(3))
    np.testing.assert_array_equal(d.entries, [0, 0, 0, 1])
    assert d.truncation_tail == 0
    d = density_diagonal(squeezed(1.0))
    assert d.entries[0] == pytest.approx(1 / math.cosh(1), rel=1e-15)
    assert d.entries[1] == 0
    assert d.entries[0] == pytest.approx(0.648054, abs=1e-6)
    d = density_diagonal(coherent(1.0))
    for n in range(8):
        assert d.entries[n] == pytest.approx(math.exp(-1) / math.factorial(n), rel=1e-13)


@pytest.mark.parametrize("name", list(catalog()))
@pytest.mark.parametrize("tail", [1e-6, 1e-12])
def test_density_sums_to_one(name, tail):
    d = density_diagonal(catalog()[name], tail)
    assert d.truncation_tail <= tail
    assert d.entries.sum() + d.truncation_tail == pytest.approx(1, abs=1e-10)


def test_squeezed_diagonal_against_vacuum_overlap():
    # rho_{2k,2k} from |<2k|S|0>|^2 computed through the Q function at the origin:
    # Q(0) = |<0|S|0>|^2 / pi = sech r / pi
    r = 0.7
    q0 = make_representations(squeezed(r))["Q"](np.array([0j]))[0].real
    assert density_diagonal(squeezed(r)).entries[0] == pytest.approx(math.pi * q0, rel=1e-14)


def test_custom_validation(tmp_path):
    with pytest.raises(StateError):
        custom([0.5, -0.1])
    with pytest.raises(StateError):
        custom([0.7, 0.7])
    path = tmp_path / "diag.csv"
    path.write_text("0.25\n0.5\n\n0.25\n")
    st_ = load_diag_csv(path)
    assert st_.diag == (0.25, 0.5, 0.25)
    assert st_.mean_photons == pytest.approx(1.0)
    path.write_text("0.5\nabc\n")
    with pytest.raises(StateError, match="abc"):
        load_diag_csv(path)


def test_mean_photons():
    assert coherent(1 + 1j).mean_photons == pytest.approx(2)
    assert squeezed(1.0).mean_photons == pytest.approx(math.sinh(1) ** 2)
    assert thermal(2.5).mean_photons == 2.5
    assert fock(4).mean_photons == 4
