import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from msqueeze.errors import NoConvergence
from msqueeze.numerics import GridSpec, hermite_psi, hermite_table, integrate


def h_mp(n, x):
    # independent high-precision evaluation of the same number-state function
    mpmath.mp.dps = 60
    x = mpmath.mpf(x)
    pref = (2 / mpmath.pi) ** mpmath.mpf(0.25) / mpmath.sqrt(2 ** n * mpmath.factorial(n))
    return float(pref * mpmath.hermite(n, mpmath.sqrt(2) * x) * mpmath.exp(-x * x))


def test_ground_state_peak():
    assert hermite_psi(0, 0.0) == pytest.approx(0.893244, abs=5e-7)
    assert hermite_psi(0, 0.0) == pytest.approx((2 / math.pi) ** 0.25, rel=1e-15)


@pytest.mark.parametrize("n, x", [(1, 0.3), (5, -1.2), (40, 2.5), (128, 4.0), (300, -9.1), (512, 15.0), (512, 0.01)])
def test_against_mpmath(n, x):
    ref = h_mp(n, x)
    assert hermite_psi(n, x) == pytest.approx(ref, rel=1e-9, abs=1e-300)


def test_far_tail_underflows_cleanly():
    v = hermite_table(512, np.array([40.0, -60.0]))
    assert np.all(np.isfinite(v))
    assert abs(v[0, 0]) == 0.0


def test_orthonormality():
    # the n = 128 turning point sits near x = 11.3
    g = GridSpec(0.0, 16.0, 4001)
    h = hermite_table(128, g.nodes)
    gram = (h * g.weights) @ h.T
    assert np.max(np.abs(gram - np.eye(129))) < 1e-10


def test_parity():
    x = np.linspace(0.1, 3, 5)
    t, tm = hermite_table(9, x), hermite_table(9, -x)
    for n in range(10):
        assert np.allclose(tm[n], (-1) ** n * t[n], rtol=1e-14)


def test_bad_orders():
    with pytest.raises(ValueError):
        hermite_table(513, 0.0)
    with pytest.raises(ValueError):
        hermite_psi(-1, 0.0)


def test_integrate_gaussian():
    res = integrate(lambda x: np.exp(-x * x), GridSpec(0.0, 9.0, 32))
    assert res.value.real == pytest.approx(math.sqrt(math.pi), rel=1e-14)
    value, err = res
    assert err < 1e-12


def test_integrate_oscillatory_gaussian():
    k = 7.0
    res = integrate(lambda x: np.exp(-x * x) * np.cos(k * x), GridSpec(0.0, 9.0, 32))
    assert res.value.real == pytest.approx(math.sqrt(math.pi) * math.exp(-k * k / 4), rel=1e-9, abs=1e-14)


def test_integrate_vector_valued():
    res = integrate(lambda x: np.stack([np.exp(-x * x), x * x * np.exp(-x * x)]), GridSpec(0.0, 9.0, 32))
    assert res.value == pytest.approx([math.sqrt(math.pi), math.sqrt(math.pi) / 2], rel=1e-13)


def test_integrate_no_convergence():
    with pytest.raises(NoConvergence):
        integrate(lambda x: np.abs(x) ** 0.5, GridSpec(0.0, 1.0, 16), max_doublings=3)


def test_grid_validation():
    with pytest.raises(ValueError):
        GridSpec(0.0, 0.0, 32)
    with pytest.raises(ValueError):
        GridSpec(0.0, 1.0, 8)
    assert GridSpec(0.0, 1.0, 17).doubled().points == 33


@settings(max_examples=50, deadline=None)
@given(c=st.floats(-5, 5), v=st.floats(0.01, 4))
def test_gaussian_grid_captures_mass(c, v):
    g = GridSpec.for_gaussian(c, v, 64)
    res = integrate(lambda x: np.exp(-(x - c) ** 2 / (2 * v)), g)
    assert res.value.real == pytest.approx(math.sqrt(2 * math.pi * v), rel=1e-12)
