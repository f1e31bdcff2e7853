from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings, strategies as st

from msqueeze.exact import GaussianRational as Q, I, coerce, is_exact

fracs = st.fractions(-20, 20, max_denominator=12)
gauss = st.builds(Q, fracs, fracs)


def test_i_squared():
    assert I * I == -1
    assert (1 + I) * (1 - I) == 2


def test_division_exact():
    z = Q(Fr(3, 4), Fr(-1, 2)) / Q(1, 1)
    assert z == Q(Fr(1, 8), Fr(-5, 8))
    assert 1 / I == -I


def test_float_degrades_to_complex():
    z = Q(1, 2) * 0.5
    assert isinstance(z, complex) and z == 0.5 + 1j
    assert isinstance(Q(1) + 1j, complex)


def test_coerce_and_is_exact():
    assert is_exact(coerce(3)) and is_exact(coerce(Fr(1, 3)))
    assert not is_exact(coerce(0.25))
    assert coerce(True) == 1


def test_float_of_complex_value_refused():
    with pytest.raises(TypeError):
        float(I)
    assert float(Q(Fr(1, 4))) == 0.25


def test_zero_division():
    with pytest.raises(ZeroDivisionError):
        Q(1) / Q(0)


@settings(max_examples=100, deadline=None)
@given(a=gauss, b=gauss, c=gauss)
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    if b:
        assert (a / b) * b == a
    assert complex(a * b) == pytest.approx(complex(a) * complex(b), rel=1e-12, abs=1e-12)


@settings(max_examples=50, deadline=None)
@given(a=gauss)
def test_hash_consistent_with_equality(a):
    assert hash(a + 0) == hash(a)
    if a.imag == 0:
        assert a == a.real
