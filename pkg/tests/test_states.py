import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from msqueeze.errors import Degenerate, NotCanonical
from msqueeze.nonlinear import NonlinearSpec
from msqueeze.numerics import hermite_psi, integrate
from msqueeze.params import TransformSpec, from_polar
from msqueeze.states import (
    eigen_residual, log_derivative, phase, phase_coefficient, solve_eigenstate, state_table,
    wavefunction_eval,
)

from conftest import HALF_PI, ref_point, std_f


def norm(state):
    return integrate(lambda x: np.abs(wavefunction_eval(state, x)) ** 2, state.grid()).value.real


def test_vacuum_is_ground_state():
    st_ = solve_eigenstate(from_polar(0.0))
    x = np.linspace(-3, 3, 13)
    assert np.allclose(wavefunction_eval(st_, x), hermite_psi(0, x), rtol=1e-14, atol=0)


def test_coherent_state_centre():
    st_ = solve_eigenstate(from_polar(0.0), 1.5 - 0.5j)
    assert st_.center == pytest.approx(1.5, rel=1e-15)
    assert st_.variance == pytest.approx(0.25, rel=1e-15)
    assert norm(st_) == pytest.approx(1.0, rel=1e-12)


def test_squeezed_variance():
    r = 0.8
    st_ = solve_eigenstate(from_polar(r), 3.0)
    assert st_.variance == pytest.approx(math.exp(-2 * r) / 4, rel=1e-14)
    assert st_.alpha == pytest.approx(3 * math.exp(-r), rel=1e-14)


def test_nonlinearity_only_in_phase():
    spec = ref_point()
    lin = solve_eigenstate(from_polar(0.8), 3.0)
    x = np.linspace(0.5, 2.0, 9)
    for n in (2, 3, 4):
        st_ = solve_eigenstate(spec, 3.0, std_f(n))
        assert st_.P.real == pytest.approx(0.0, abs=1e-15)
        assert np.allclose(np.abs(wavefunction_eval(st_, x)), np.abs(wavefunction_eval(lin, x)), rtol=1e-13)


def test_phase_coefficient_value():
    # P = -2 gamma / (mu - nu) = -0.2 i e^{0.8} at the reference point
    assert phase_coefficient(ref_point()) == pytest.approx(-0.2j * math.exp(0.8), rel=1e-14)


def test_phase_coefficient_degenerate():
    with pytest.raises(Degenerate):
        phase_coefficient(TransformSpec(1.0, 1.0, 0.0))


def test_noncanonical_rejected():
    with pytest.raises(NotCanonical):
        solve_eigenstate(TransformSpec(1.2, 0.0, 0.0))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_eigen_residual_reference_point(n):
    st_ = solve_eigenstate(ref_point(), 3.0, std_f(n))
    g = st_.grid()
    assert eigen_residual(st_, g) < 1e-8
    assert eigen_residual(st_, g.doubled()) < 1e-8


@pytest.mark.parametrize("r, phi", [(0.0, 0.0), (0.8, 0.0), (1.3, -0.9)])
def test_linear_eigenstate_residual(r, phi):
    st_ = solve_eigenstate(from_polar(r, phi, phi), 2.0 - 1.0j)
    assert eigen_residual(st_) < 1e-10


def test_log_derivative_matches_finite_difference():
    st_ = solve_eigenstate(ref_point(), 3.0, std_f(3))
    x, h = 1.1, 1e-6
    fd = (np.log(wavefunction_eval(st_, x + h) / wavefunction_eval(st_, x - h))) / (2 * h)
    assert complex(log_derivative(st_, x)) == pytest.approx(complex(fd), rel=1e-7)


def test_phase_is_continuous():
    st_ = solve_eigenstate(ref_point(0.5), 3.0, std_f(4))
    x = np.linspace(-1, 3, 40001)
    ph = phase(st_, x)
    ref = np.unwrap(np.angle(wavefunction_eval(st_, x)))
    assert np.ptp(ph - ref) < 1e-9
    assert np.ptp(ph) > 2 * math.pi


def test_state_table_columns():
    st_ = solve_eigenstate(ref_point(), 3.0, std_f(2))
    tab = state_table(st_, st_.grid(64))
    assert set(tab) == {"x", "re_psi", "im_psi", "density", "phase"}
    assert np.allclose(tab["density"], tab["re_psi"] ** 2 + tab["im_psi"] ** 2)


angles = st.floats(-math.pi, math.pi)


@settings(max_examples=60, deadline=None)
@given(r=st.floats(0, 2), phi1=angles, phi2=angles, g=st.floats(0, 0.5),
       br=st.floats(-4, 4), bi=st.floats(-4, 4), n=st.integers(1, 4))
def test_normalized_eigenstate(r, phi1, phi2, g, br, bi, n):
    mmn = math.cosh(r) * cmath.exp(1j * phi1) - math.sinh(r) * cmath.exp(1j * phi2)
    spec = from_polar(r, phi1, phi2, g, cmath.phase(mmn) + HALF_PI)
    st_ = solve_eigenstate(spec, complex(br, bi), NonlinearSpec.monomial(n))
    assert norm(st_) == pytest.approx(1.0, rel=1e-10)
    assert st_.variance == pytest.approx(abs(mmn) ** 2 / 4, rel=1e-12)
    assert eigen_residual(st_) < 1e-8
