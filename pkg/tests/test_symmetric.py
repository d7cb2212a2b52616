"""Gamma generators, orbit maxima and the decomposition algorithm."""

import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from equichar.coeffs import AQ, QQ, BurnsideCoeff
from equichar.groups import SIGMA, GroupAction, is_invariant, symmetrize
from equichar.symmetric import (NotInvariant, algebra, decompose, factor_for_dominant, gamma, gamma_expand,
                                is_admissible, is_orbit_max)
from equichar.torus import TorusPolynomial, parse_polynomial
from equichar.verify import random_invariant


def test_gamma_one_one_realisation():
    # [PAPER] gamma_{1,1} = w1 u2 + w2 u1 in rank 2
    assert gamma_expand(1, 1, 2) == parse_polynomial("w1*u2 + w2*u1", 2)


def test_gamma_zero_is_elementary_in_u():
    # gamma_{0,k} is the k-th elementary symmetric function of the u's
    p = gamma_expand(0, 2, 3)
    assert p == parse_polynomial("u1*u2 + u1*u3 + u2*u3", 3)


def test_decompose_examples():
    # [PAPER] (u1+u2)(w1u2+w2u1) = gamma_{1,1} + e1 gamma_{0,2}
    p = parse_polynomial("u1 + u2", 2) * parse_polynomial("w1*u2 + w2*u1", 2)
    assert str(decompose(p)) == "g_{1,1} + e1*g_{0,2}"
    # [TRIVIAL] Newton: w1^2 + w2^2 = e1^2 - 2 e2
    q = parse_polynomial("w1^2 + w2^2", 2)
    assert str(decompose(q)) == "-2 e2 + e1^2"


def test_orbit_max_condition():
    # pairs (a_k, eps_k) weakly decreasing
    assert is_orbit_max((1, 1, 0b11))
    assert is_orbit_max((2, 1, 0, 0b011))
    assert not is_orbit_max((1, 2, 0b00))
    assert not is_orbit_max((1, 1, 0b01))


def test_factor_for_dominant_example():
    # w1^2 w2 u2 u3: one e-factor of degree 2 and a gamma_{1,2}; degree 3 overall
    key, c = factor_for_dominant((2, 1, 0, 0b011), 3, check=True)
    alg = algebra((3,), QQ)
    assert c == 1
    assert alg.format_key(key) == "e2*g_{1,2}"


def test_factor_for_dominant_reproduces_dominant_term():
    alg = algebra((4,), QQ)
    for m in [(3, 2, 2, 0, 0b0110), (1, 1, 1, 1, 0b1111), (2, 0, 0, 0, 0b1010), (1, 1, 0, 0, 0b0011)]:
        if not is_orbit_max(m):
            continue
        key, c = factor_for_dominant(m, 4)
        p = alg.monomial_torus(key)
        assert p.dominant_term() == m
        assert p.coefficient(m) == c


def test_non_invariant_input_rejected():
    p = parse_polynomial("w1*u2", 2)
    with pytest.raises(NotInvariant):
        decompose(p)


def test_admissibility():
    assert is_admissible((gamma(1, 1), gamma(3, 1)))
    assert not is_admissible((gamma(1, 1), gamma(2, 1)))


def _sympy_elementary(gp, n):
    s = sympy.symbols(f"s1:{n + 1}")
    expr = 0
    for key, c in gp.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for sym in key:
            assert sym.i == 0, "u-free input must decompose into e's only"
            term *= s[sym.s - 1]
        expr += term
    return sympy.expand(expr), s


@pytest.mark.parametrize("n", [2, 3, 4])
def test_u_free_part_matches_sympy(n):
    """Independent oracle: sympy's fundamental-theorem reduction of a u-free symmetric polynomial."""
    rng = random.Random(n)
    xs = sympy.symbols(f"w1:{n + 1}")
    for _ in range(5):
        terms = {}
        for _ in range(3):
            a = tuple(rng.randint(0, 3) for _ in range(n))
            terms[a + (0,)] = rng.randint(-9, 9) or 1
        p = symmetrize(TorusPolynomial(n, terms, QQ), GroupAction(SIGMA, n))
        if not p:
            continue
        ours, s = _sympy_elementary(algebra((n,), QQ).decompose(p), n)
        expr = sum(sympy.Integer(int(c)) * sympy.prod([xs[k] ** m[k] for k in range(n)]) for m, c in p.terms.items())
        sym, rem, defs = sympy.polys.polyfuncs.symmetrize(sympy.expand(expr), *xs, formal=True)
        assert rem == 0
        names = {d[0]: s[k] for k, d in enumerate(defs)}
        assert sympy.expand(sym.subs(names)) == ours


@st.composite
def invariant(draw):
    seed = draw(st.integers(0, 10**6))
    n = draw(st.integers(1, 4))
    return random_invariant(random.Random(seed), n, max_degree=5)


@given(invariant())
def test_round_trip(p):
    assert algebra((p.n,), QQ).decompose(p).expand() == p


@given(invariant(), invariant())
def test_decompose_is_linear(p, q):
    if p.n != q.n:
        return
    alg = algebra((p.n,), QQ)
    assert alg.decompose(p + q) == alg.decompose(p) + alg.decompose(q)


@given(invariant(), invariant())
def test_products_round_trip(p, q):
    if p.n != q.n or p.n > 3:
        return
    alg = algebra((p.n,), QQ)
    assert alg.decompose(p * q).expand() == p * q


@given(invariant())
def test_decomposition_is_admissible(p):
    gp = algebra((p.n,), QQ).decompose(p)
    assert all(is_admissible(k) for k in gp.terms)


def test_aq_decomposition_drops_x_on_u_terms():
    alg = algebra((2,), AQ)
    u = alg.generator(0, 1)
    p = (u * BurnsideCoeff(3, 5)).expand()
    gp = alg.decompose(p)
    assert gp.terms == {(gamma(0, 1),): BurnsideCoeff(3, 0)}


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_generators_are_invariant(n):
    alg = algebra((n,), QQ)
    W = GroupAction(SIGMA, n)
    for s in range(n + 1):
        for i in range(n - s + 1):
            if s + i:
                assert is_invariant(alg.symbol_torus(gamma(s, i)), W)


def test_tensor_blocks_decompose():
    alg = algebra((1, 1), AQ)
    p = parse_polynomial("u1 + u2", 2, AQ)
    assert str(alg.decompose(p)) == "u(x)1 + 1(x)u"


def test_json_round_trip():
    alg = algebra((3,), AQ)
    gp = alg.generator(1, 1) * alg.generator(2, 0) * Fraction(-3, 4) + alg.constant(BurnsideCoeff(1, -1))
    assert type(gp).from_json(alg, gp.to_json()) == gp
