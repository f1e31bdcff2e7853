import math
from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings, strategies as st

from msqueeze.errors import DegreeOverflow, NotReducible
from msqueeze.exact import GaussianRational as Q
from msqueeze.nonlinear import NonlinearSpec
from msqueeze.opalg import (
    A, AD, NormalPoly, QuadPoly, Scalar, commutator, commutator_check, expand_b,
    expand_hamiltonian, normal_form, quadrature_form, quadratures,
)
from msqueeze.params import TransformSpec, from_polar

from conftest import CANONICAL_EXACT, HALF_PI, NONCANONICAL_EXACT, std_f, sympy_normal

X = NonlinearSpec.monomial


def as_complex(p: NormalPoly) -> dict:
    return {key: complex(c) for key, c in p.items()}


def assert_terms_close(p: NormalPoly, ref: dict, tol=1e-12):
    got = as_complex(p)
    for key in set(got) | set(ref):
        assert abs(got.get(key, 0) - ref.get(key, 0)) <= tol, key


# -- normal ordering -----------------------------------------------------------

def test_a_adag():
    p = normal_form(A * AD)
    assert p == NormalPoly({(1, 1): 1, (0, 0): 1})


def test_x1_squared():
    x1 = (A + AD) * Fr(1, 2)
    p = normal_form(x1 * x1)
    assert p == NormalPoly({(2, 0): Fr(1, 4), (0, 2): Fr(1, 4), (1, 1): Fr(1, 2), (0, 0): Fr(1, 4)})


def test_a2_adag2():
    p = normal_form(A ** 2 * AD ** 2)
    assert p == NormalPoly({(2, 2): 1, (1, 1): 4, (0, 0): 2})


def test_exact_coefficients_stay_rational():
    p = normal_form((A + AD * Q(0, Fr(1, 3))) ** 3)
    assert all(isinstance(c, Q) for _, c in p.items())


def test_block_product_matches_word_rewriting():
    # two independent reordering paths
    a, ad = NormalPoly.a(), NormalPoly.ad()
    for k in range(5):
        for l in range(5):
            assert a ** l * ad ** k == normal_form(A ** l * AD ** k)


def test_zero_terms_dropped():
    p = NormalPoly({(1, 0): 1, (0, 1): 0})
    assert len(p) == 1
    assert (p - p).is_zero()
    assert len(p - p) == 0


def test_degree_overflow():
    with pytest.raises(DegreeOverflow):
        normal_form(A ** 9 * AD ** 9)
    with pytest.raises(DegreeOverflow):
        NormalPoly.a(max_degree=4) ** 5
    assert normal_form(A ** 9 * AD ** 9, max_degree=18).degree == 18


def test_adjoint_round_trip():
    p = NormalPoly({(2, 1): Q(1, 2), (0, 3): 3, (0, 0): Q(0, -1)})
    assert p.dag().dag() == p
    assert p.dag().coeff(1, 2) == Q(1, -2)


def test_pretty_and_rows():
    p = normal_form(A * AD)
    assert p.pretty() == "1 · ad a + 1 · 1"
    assert sorted(p.rows()) == [(0, 0, 1.0, 0.0), (1, 1, 1.0, 0.0)]


# -- sympy as an independent oracle ----------------------------------------------

@pytest.mark.parametrize("word", ["a a ad", "ad a a ad ad", "a a a ad ad ad", "a ad a ad a ad"])
def test_against_sympy_words(word, boson):
    a, ad = boson
    ours, theirs = Scalar(1), 1
    for letter in word.split():
        ours = ours * (A if letter == "a" else AD)
        theirs = theirs * (a if letter == "a" else ad)
    assert_terms_close(normal_form(ours), sympy_normal(theirs))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_hamiltonian_against_sympy(n, boson):
    import sympy as sp
    from sympy.physics.quantum import Dagger
    a, ad = boson
    mu, nu = sp.Rational(5, 4), sp.Rational(3, 4)
    g = sp.I * sp.Rational(1, 10)
    b = mu * a + nu * ad + g * ((a + ad) / 2) ** n
    ref = sympy_normal(Dagger(b) * b)
    spec = TransformSpec(Q(Fr(5, 4)), Q(Fr(3, 4)), Q(0, Fr(1, 10)))
    assert_terms_close(expand_hamiltonian(spec, X(n)), ref, tol=1e-14)


# -- property tests ----------------------------------------------------------------

small = st.fractions(-3, 3, max_denominator=5)
gauss = st.builds(Q, small, small)
polys = st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2)), gauss, max_size=4).map(NormalPoly)


@settings(max_examples=60, deadline=None)
@given(p=polys, q=polys)
def test_normal_form_homomorphism(p, q):
    from msqueeze.opalg import from_normal
    direct = normal_form(from_normal(p) * from_normal(q))
    assert direct == p * q
    assert normal_form(normal_form(from_normal(p)) * normal_form(from_normal(q))) == direct


@settings(max_examples=60, deadline=None)
@given(p=polys, q=polys)
def test_adjoint_commutes_with_normal_form(p, q):
    from msqueeze.opalg import from_normal
    e = from_normal(p) * from_normal(q) + from_normal(q)
    assert normal_form(e).dag() == normal_form(e.dag())


# -- the transformation -------------------------------------------------------------

def test_expand_b_identity_and_linear():
    assert expand_b(TransformSpec(1, 0, 0), X(3)) == NormalPoly.a()
    spec = TransformSpec(Q(Fr(5, 4)), Q(Fr(3, 4)), 0)
    assert expand_b(spec, X(3)) == NormalPoly({(0, 1): Fr(5, 4), (1, 0): Fr(3, 4)})


def test_expand_b_quadratic():
    mu, nu, g = Q(Fr(5, 4)), Q(Fr(3, 4)), Q(0, Fr(1, 10))
    b = expand_b(TransformSpec(mu, nu, g), X(2))
    q = g * Fr(1, 4)
    assert b == NormalPoly({(0, 1): mu, (1, 0): nu, (2, 0): q, (0, 2): q, (1, 1): 2 * q, (0, 0): q})


@pytest.mark.parametrize("spec", CANONICAL_EXACT, ids=lambda s: f"mu={complex(s.mu):.3g}")
def test_commutator_vanishes_exactly(spec):
    assert spec.canonical
    for n in range(1, 6):
        res = commutator_check(spec, X(n))
        assert res.is_zero(), res.pretty()


@pytest.mark.parametrize("spec", NONCANONICAL_EXACT, ids=lambda s: f"g={complex(s.gamma):.3g}")
def test_commutator_nonzero_when_not_canonical(spec):
    assert not spec.canonical
    for n in range(1, 6):
        assert not commutator_check(spec, X(n)).is_zero()


def test_commutator_constant_for_scaled_mu():
    res = commutator_check(TransformSpec(Q(Fr(6, 5)), 0, 0), X(2))
    assert res == NormalPoly({(0, 0): Fr(11, 25)})


def test_commutator_float_reference_point():
    spec = from_polar(0.8, 0, 0, 0.1, HALF_PI)
    for n in (3, 5):
        assert commutator_check(spec, X(n)).is_zero(tol=1e-12)


def test_nonlinear_in_a_breaks_canonicity():
    # b = mu a + nu a^dag + gamma a^2 has an operator-valued commutator
    a, ad = NormalPoly.a(), NormalPoly.ad()
    mu, nu, g = Q(Fr(5, 4)), Q(Fr(3, 4)), Q(0, Fr(1, 10))
    b = mu * a + nu * ad + g * a * a
    res = commutator(b, b.dag()) - 1
    assert not res.is_zero()
    assert res.degree > 0
    assert res.coeff(1, 1) == 4 * g * g.conjugate()


def test_hamiltonian_linear_case():
    spec = TransformSpec(Q(Fr(5, 4)), Q(Fr(3, 4)), 0)
    h = expand_hamiltonian(spec, X(1))
    assert h == NormalPoly({(1, 1): Fr(34, 16), (2, 0): Fr(15, 16), (0, 2): Fr(15, 16), (0, 0): Fr(9, 16)})


def test_hamiltonian_free_mode():
    # b^dag b = a^dag a: the zero-point 1/2 is not part of the operator
    assert expand_hamiltonian(TransformSpec(1, 0, 0), X(2)) == NormalPoly({(1, 1): 1})


@pytest.mark.parametrize("spec", CANONICAL_EXACT[1:4])
def test_hamiltonian_hermitian(spec):
    for n in (2, 3, 4):
        h = expand_hamiltonian(spec, X(n))
        assert h == h.dag()


def test_hamiltonian_quartic_coefficient():
    spec = from_polar(0.7, 0.2, 0.2, 0.3, 0.2 + HALF_PI)
    h = expand_hamiltonian(spec, std_f(2))
    assert complex(h.coeff(4, 0)) == pytest.approx(0.3 ** 2 / 4, abs=1e-14)


# -- quadrature form ------------------------------------------------------------------

def test_quadratures_commutator():
    x1, x2 = quadratures()
    assert commutator(x1, x2) == NormalPoly({(0, 0): Q(0, Fr(1, 2))})


def test_quadrature_form_linear_equal_phases():
    r = 0.8
    q = quadrature_form(from_polar(r), X(1))
    # b^dag b = e^{2r} X1^2 + e^{-2r} X2^2 - 1/2
    assert q.coeff("x1", 2).real == pytest.approx(math.exp(2 * r), rel=1e-13)
    assert q.coeff("x2sq").real == pytest.approx(math.exp(-2 * r), rel=1e-13)
    assert q.coeff("x1", 0).real == pytest.approx(-0.5, abs=1e-13)
    assert q.coeff("anti", 1) == pytest.approx(0, abs=1e-13)


def test_quadrature_form_mixed_phase_cross_term():
    r, p1, p2 = 0.6, 0.4, -0.3
    q = quadrature_form(from_polar(r, p1, p2), X(1))
    assert q.coeff("anti", 1).real == pytest.approx(-math.sinh(2 * r) * math.sin(p1 - p2), rel=1e-12)
    assert q.is_hermitian()


def test_quadrature_form_anticommutator_with_f():
    # {F, X2} coefficient equals -|gamma| C- in the [X1, X2] = i/2 variables
    r, g = 0.8, 0.1
    q = quadrature_form(from_polar(r, 0, 0, g, HALF_PI), X(2))
    c_minus = math.cosh(r) * math.sin(-HALF_PI) - math.sinh(r) * math.sin(-HALF_PI)
    assert q.coeff("anti", 2).real == pytest.approx(-g * c_minus, rel=1e-12)
    # same coefficient read in standard variables with a standard-convention F
    qp = quadrature_form(from_polar(r, 0, 0, g, HALF_PI), std_f(2)).rescaled(math.sqrt(2))
    assert qp.coeff("anti", 2).real == pytest.approx(-(g / math.sqrt(2)) * c_minus, rel=1e-12)


def test_completed_square_template():
    spec = from_polar(0.5, 0.3, -0.2, 0.2, 0.0, check=False)
    spec = from_polar(0.5, 0.3, -0.2, 0.2, _canonical_delta(0.5, 0.3, -0.2))
    for n in (2, 3, 4):
        sq = quadrature_form(spec, X(n)).completed_square(X(n))
        assert sq.c > 0


def _canonical_delta(r, p1, p2):
    import cmath
    mmn = math.cosh(r) * cmath.exp(1j * p1) - math.sinh(r) * cmath.exp(1j * p2)
    return cmath.phase(mmn) + HALF_PI


def test_completed_square_obstruction():
    q = QuadPoly({("x2sq", 0): 1, ("anti", 3): 1, ("x1", 2): 1})
    with pytest.raises(NotReducible):
        q.completed_square(X(2))
    with pytest.raises(NotReducible):
        QuadPoly({("x2sq", 0): -1}).completed_square(X(2))
