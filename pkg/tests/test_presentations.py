"""Family presentations, restriction, dimensions and the SU quotient."""

import json
from fractions import Fraction

import pytest

from equichar.coeffs import AQ
from equichar.groups import is_invariant
from equichar.presentations import (DimensionMismatch, GroupId, UnsupportedGroup, family_algebra, family_relations,
                                    fixed_point_dimension_o, graded_dimension, group_id, o_even_quotient_dimension,
                                    oracle_dimension, presentation, presentation_dimension, restriction, su_check,
                                    torus_realization, weyl)
from equichar.relations import dim_u
from equichar.symmetric import CHI
from equichar.torus import parse_polynomial


def test_group_id_validation():
    with pytest.raises(UnsupportedGroup):
        group_id("su", 1)
    with pytest.raises(UnsupportedGroup):
        group_id("g2", 2)
    assert group_id("sp", 2) == GroupId("Sp", 2)


def test_rank_one_unitary():
    # [PAPER] A_Q[u, w]/(u^2 = u, xu)
    p = presentation(GroupId("U", 1))
    assert [g[0] for g in p.generators] == ["u", "e1"]
    assert "u^2 = u" in p.relations and "x*u = 0" in p.relations


def test_symplectic_rank_one_degrees():
    p = presentation(GroupId("Sp", 1))
    assert [(g[0], g[1]) for g in p.generators] == [("u", 0), ("k1", 4)]
    assert "u^2 = u" in p.relations


def test_orthogonal_rank_one():
    # [PAPER] O(1): A_Q[delta]/(delta^2 = delta, x delta)
    p = presentation(GroupId("O", 1))
    assert [g[0] for g in p.generators] == ["delta"]
    assert set(p.relations) == {"x*delta = 0", "delta^2 = delta"}


@pytest.mark.parametrize("family,rank,degrees", [
    ("U", 2, {"u": 0, "e1": 2, "e2": 4, "g_{1,1}": 2}),
    ("Sp", 2, {"u": 0, "k1": 4, "k2": 8, "kappa_{1,1}": 4}),
    ("SO", 4, {"u": 0, "p1": 4, "pi_{1,1}": 4, "chi": 4}),
    ("SO", 6, {"u": 0, "p1": 4, "p2": 8, "pi_{1,1}": 4, "pi_{1,2}": 4, "pi_{2,1}": 8, "chi": 6}),
])
def test_degree_tables(family, rank, degrees):
    p = presentation(GroupId(family, rank))
    assert {g[0]: g[1] for g in p.generators} == degrees


def test_torus_examples():
    real = torus_realization(GroupId("U", 2))
    assert real["g_{1,1}"] == parse_polynomial("w1*u2 + w2*u1", 2, AQ)
    assert torus_realization(GroupId("Sp", 1))["k1"] == parse_polynomial("w1^2", 1, AQ)
    # SO(2) = U(1): chi = e1 = w1
    assert torus_realization(GroupId("SO", 2))["chi"] == parse_polynomial("w1", 1, AQ)


@pytest.mark.parametrize("g", [GroupId("U", n) for n in (1, 2, 3, 4)] + [GroupId("Sp", n) for n in (1, 2, 3)]
                         + [GroupId("SO", n) for n in (2, 3, 4, 5, 6, 7, 8)])
def test_realisations_invariant(g):
    W = weyl(g)
    for p in torus_realization(g).values():
        assert is_invariant(p, W)


@pytest.mark.parametrize("g", [GroupId("Sp", n) for n in (1, 2, 3)] + [GroupId("SO", n) for n in (3, 4, 5, 6, 7)])
def test_relation_transport(g):
    for _, lhs, rhs in family_relations(g):
        assert lhs.expand() == rhs.expand(), f"{lhs} = {rhs}"


@pytest.mark.parametrize("n", [1, 2, 3])
def test_euler_square(n):
    alg = family_algebra(GroupId("SO", 2 * n))
    assert alg.generator(n, 0).expand() == (alg.special(CHI) * alg.special(CHI)).expand()


@pytest.mark.parametrize("g", [GroupId("U", 2), GroupId("Sp", 2), GroupId("SO", 4), GroupId("SO", 5), GroupId("O", 3)])
def test_restriction(g):
    data = restriction(g)
    assert all(data.checks.values()), data.checks
    assert data.res["y"] == "0" and data.res["x"] == "2"


def test_restriction_values():
    res = restriction(GroupId("U", 2)).res
    assert res["e1"] == "c1" and res["g_{1,1}"] == "0" and res["u"] == "0"
    assert restriction(GroupId("O", 3)).res["delta"] == "0"
    assert restriction(GroupId("SO", 4)).res["chi"] == "chi"


def test_dimension_examples():
    assert graded_dimension(GroupId("U", 1), 0) == 3
    assert graded_dimension(GroupId("U", 2), 1) == 5
    # span of 1, x, u, delta
    assert graded_dimension(GroupId("O", 2), 0) == 4


@pytest.mark.parametrize("g", [GroupId("U", r) for r in (1, 2, 3)] + [GroupId("Sp", r) for r in (1, 2, 3)]
                         + [GroupId("SO", r) for r in range(1, 8)] + [GroupId("O", r) for r in (1, 2, 3, 4, 5, 7)]
                         + [GroupId("SU", 2)])
def test_dimension_double_entry(g):
    for m in range(9):
        graded_dimension(g, m)


@pytest.mark.parametrize("N", [1, 3, 5, 7])
def test_odd_orthogonal_matches_fixed_points(N):
    # third route: the fixed-point count
    for m in range(9):
        assert presentation_dimension(GroupId("O", N), m) == fixed_point_dimension_o(N, m)


def test_even_orthogonal_quotients():
    # [DERIVED] fixed-point counts: O(2) is 4, 3, 3, ...; O(4) is 6, 7, 11 in degrees 0, 4, 8
    assert [o_even_quotient_dimension(1, m) for m in (0, 2, 4, 6)] == [4, 3, 3, 3]
    assert [o_even_quotient_dimension(2, m) for m in (0, 2, 4)] == [6, 7, 11]
    with pytest.raises(UnsupportedGroup):
        o_even_quotient_dimension(3, 0)


def test_dim_u_agrees():
    for n in (1, 2, 3):
        for m in range(7):
            assert presentation_dimension(GroupId("U", n), m) == dim_u(n, m)


def test_su_checks():
    two = su_check(2)
    assert two["e1_vanishes"] and two["g_{1,1}_vanishes"] and two["u_squared_is_2u"]
    assert two["su2_to_sp1_ring_map"]
    # on the torus e2 = w1 w2 = -w1^2 and u = u1 + u2 = 2 u1
    assert two["torus_e2_over_k1"] == Fraction(-1) and two["torus_u_over_u"] == 2
    three = su_check(3)
    assert three["e1_vanishes"] and three["g_{1,2}_vanishes"]
    with pytest.raises(UnsupportedGroup):
        su_check(4)


def test_su_presentations():
    assert presentation(GroupId("SU", 2)).relations_complete
    p3 = presentation(GroupId("SU", 3))
    assert not p3.relations_complete
    with pytest.raises(UnsupportedGroup):
        graded_dimension(GroupId("SU", 3), 1)


def test_presentation_json_is_stable():
    a = presentation(GroupId("U", 2)).dumps()
    b = presentation(GroupId("U", 2)).dumps()
    assert a == b
    d = json.loads(a)
    assert set(d) >= {"group", "rank", "coefficient_ring", "generators", "relations", "restriction",
                      "relations_complete"}


def test_rank_bound():
    with pytest.raises(UnsupportedGroup):
        presentation(GroupId("U", 5))
