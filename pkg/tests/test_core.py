"""Coefficients, torus polynomials, group actions and the invariant oracle."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from equichar.coeffs import AQ, QQ, BurnsideCoeff, X, Y, ONE, describe, format_coeff, parse_coeff
from equichar.groups import (EVEN_SIGN, SIGMA, SIGN_ONLY, WREATH, GroupAction, ResourceLimit, act, compose,
                             invariant_dimension, is_invariant, symmetrize)
from equichar.substitution import SubstitutionMap, identity_map
from equichar.torus import NotHomogeneous, TorusPolynomial, VariableMismatch, format_polynomial, parse_polynomial


def w(i, n, ring=QQ):
    return TorusPolynomial.w(i, n, ring)


def u(i, n, ring=QQ):
    return TorusPolynomial.u(i, n, ring)


# --- Burnside coefficients ---------------------------------------------------

def test_burnside_idempotents():
    # x^2 = 2x, y = 1 - x/2 is idempotent and orthogonal to x
    assert X * X == X * 2
    assert Y * Y == Y
    assert not (X * Y)
    assert Y + X * Fraction(1, 2) == ONE


def test_components_are_ring_map():
    a, b = BurnsideCoeff(3, -2), BurnsideCoeff(Fraction(1, 2), 5)
    pa, pb = a.components(), b.components()
    prod = (a * b).components()
    assert prod == (pa[0] * pb[0], pa[1] * pb[1])


def test_coeff_text_round_trip():
    for c in (BurnsideCoeff(0, 1), Y, BurnsideCoeff(-3, Fraction(2, 7)), BurnsideCoeff(5, 0)):
        assert parse_coeff(format_coeff(c), AQ) == c
    assert describe(Y) == "y"
    assert describe(X) == "x"


# --- torus polynomials -------------------------------------------------------

def test_u_idempotent_and_x_kills_u():
    p = u(1, 2, AQ)
    assert p * p == p
    assert not p.scale(X)
    # y u = u because x u = 0
    assert p.scale(Y) == p


def test_degree_and_dominant_term():
    p = w(1, 2) * w(1, 2) * u(2, 2) + w(2, 2) * u(1, 2)
    assert p.degrees() == {1, 2}
    with pytest.raises(NotHomogeneous):
        p.degree()
    q = w(1, 2) * u(2, 2) + w(2, 2) * u(1, 2) + w(1, 2) * u(1, 2)
    # lex order on (a, eps): w1 u1 beats w1 u2
    assert q.dominant_term() == (1, 0, 0b10)


def test_variable_mismatch():
    with pytest.raises(VariableMismatch):
        w(1, 2) + w(1, 3)


def test_format_round_trip_example():
    p = (w(1, 2) + w(2, 2)) * (u(1, 2) + u(2, 2)).scale(3) - TorusPolynomial.constant(2, Fraction(1, 2))
    text = format_polynomial(p)
    assert parse_polynomial(text, 2) == p


coeff = st.integers(-9, 9)
mono2 = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))


@st.composite
def torus2(draw, ring=QQ):
    terms = draw(st.dictionaries(mono2, coeff, max_size=5))
    if ring == AQ:
        terms = {m: BurnsideCoeff(c, draw(coeff)) for m, c in terms.items()}
    return TorusPolynomial(2, terms, ring)


@given(torus2(), torus2(), torus2())
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@given(torus2(AQ))
def test_parse_inverts_format(p):
    assert parse_polynomial(format_polynomial(p), 2, AQ) == p


# --- group actions and the oracle -------------------------------------------

@pytest.mark.parametrize("kind,n,order", [(SIGMA, 3, 6), (WREATH, 2, 8), (EVEN_SIGN, 3, 24), (SIGN_ONLY, 2, 4)])
def test_group_orders(kind, n, order):
    W = GroupAction(kind, n)
    elems = list(W.elements())
    assert len(elems) == W.order() == order
    assert len(set(elems)) == order


def test_compose_is_action():
    W = GroupAction(WREATH, 2)
    p = w(1, 2) * w(1, 2) * w(2, 2) + u(1, 2) * w(2, 2)
    for g in W.elements():
        for h in W.elements():
            assert act(compose(g, h), p) == act(g, act(h, p))


def test_symmetrize_is_invariant():
    p = w(1, 3) * u(2, 3)
    for kind in (SIGMA, WREATH, EVEN_SIGN):
        assert is_invariant(symmetrize(p, GroupAction(kind, 3)), GroupAction(kind, 3))


def test_invariant_dimension_small_values():
    # [TRIVIAL] rank one: 1, u and w^d, w^d u span each degree
    assert invariant_dimension(GroupAction(SIGMA, 1), 1, 0) == 2
    assert invariant_dimension(GroupAction(SIGMA, 1), 1, 3, ring=AQ) == 3
    # [DERIVED] Sigma_2 in degree 1: w1+w2, w1u1+w2u2, w1u2+w2u1, (w1+w2)u1u2
    assert invariant_dimension(GroupAction(SIGMA, 2), 2, 1) == 4
    # odd degree vanishes under the sign changes
    assert invariant_dimension(GroupAction(WREATH, 2), 2, 3) == 0


def test_invariant_dimension_resource_limit():
    with pytest.raises(ResourceLimit):
        invariant_dimension(GroupAction(WREATH, 4), 4, 12, limit=1000)


def test_substitution_checks_idempotents():
    with pytest.raises(ValueError):
        SubstitutionMap(1, 1, [w(1, 1)], [u(1, 1).scale(2)])
    f = identity_map(2)
    p = w(1, 2) * u(2, 2)
    assert f(p) == p
    assert f.compose(f)(p) == p
