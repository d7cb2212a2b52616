"""Induced maps: substitution-built images against the closed forms and structural checks."""

import pytest

from equichar.coeffs import X
from equichar.maps import (MapError, coassociativity, conjecture_evidence, conjugation_involution, conjugation_map,
                           counit_check, forgetful_stable_check, functoriality, induced_map, preserves_relations,
                           stability_check, stable_classes, tail_agreement, tensor_swap_symmetric, verify_closed_form)


def images(kind, n, m=None, family="U"):
    res = induced_map(kind, n, m, family)
    return {res.source_alg.symbol_name(s): str(res.image(s)) for s in res.generators()}


def test_oplus_one_rank_two():
    # [PAPER] u -> y + u; gamma_{1,1} -> gamma_{1,0} = y e1
    img = images("OplusOne", 1)
    assert img["u"] == "y + u"
    assert img["g_{1,1}"] == "y e1"
    assert img["e2"] == "0"


def test_tensor_line():
    img = images("TensorLine", 1)
    assert img["u"] == "y - u(x)1 - 1(x)u + 2 u(x)u"
    assert img["e1"] == "e1(x)1 + 1(x)e1"
    res = induced_map("TensorLine", 1)
    u_img = res.image(res.generators()[0]).expand()
    assert u_img * u_img == u_img
    assert not u_img.scale(X)


def test_forget_sp_e2():
    # [PAPER] e2 -> -k1
    assert images("ForgetSpToU", 1)["e2"] == "-k1"


def test_conjugation():
    img = images("Conjugation", 2)
    assert img["e1"] == "-e1" and img["e2"] == "e2" and img["g_{1,1}"] == "-g_{1,1}" and img["u"] == "u"
    assert images("Conjugation", 1)["e1"] == "-e1"
    assert all(conjugation_involution(n) for n in (1, 2, 3))
    assert conjugation_map(2).kind == "Conjugation"


EXACT = [("OplusOne", 1, None, "U"), ("OplusOne", 2, None, "U"), ("OplusOne", 3, None, "U"),
         ("OplusSigma", 1, None, "U"), ("OplusSigma", 3, None, "U"), ("OplusOne", 2, None, "Sp"),
         ("OplusOne", 1, None, "SO"), ("OplusOne", 2, None, "SO"), ("OplusTwoSigma", 2, None, "SO"),
         ("OplusTwoSigma", 3, None, "SO"), ("WhitneySum", 1, 1, "U"), ("WhitneySum", 2, 1, "U"),
         ("WhitneySum", 1, 2, "U"), ("TensorLine", 1, None, "U"), ("Conjugation", 3, None, "U"),
         ("QuatUToSp", 1, None, "U"), ("QuatUToSp", 2, None, "U"), ("QuatUToSp", 3, None, "U"),
         ("ForgetUToSO", 1, None, "U"), ("ForgetUToSO", 2, None, "U"), ("ForgetUToSO", 3, None, "U")]


@pytest.mark.parametrize("kind,n,m,family", EXACT)
def test_closed_forms(kind, n, m, family):
    rep = verify_closed_form(kind, n, m, family)
    assert rep["ok"], [r for r in rep["rows"] if not r["ok"]]


@pytest.mark.parametrize("kind", ["ForgetSpToU", "ComplexifySOToU"])
def test_forgetful_factor_two(kind):
    """The stated substitution doubles u; the even-index e's still match their closed forms."""
    for n in (1, 2):
        rows = {r["generator"]: r for r in verify_closed_form(kind, n)["rows"]}
        assert rows["u"]["computed"] == "2 u"
        for i in range(1, 2 * n + 1):
            assert rows[f"e{i}"]["ok"]
    rows = {r["generator"]: r for r in verify_closed_form(kind, 2)["rows"]}
    assert rows["g_{2,1}"]["computed"].startswith("-2 ")


@pytest.mark.parametrize("kind,n,m,family", EXACT + [("ForgetSpToU", 2, None, "U"), ("ComplexifySOToU", 2, None, "U")])
def test_relations_preserved(kind, n, m, family):
    rep = preserves_relations(induced_map(kind, n, m, family))
    assert all(rep.values()), rep


def test_tails_agree():
    for n in (1, 2, 3):
        assert tail_agreement(n)["ok"]


def test_structure():
    assert tensor_swap_symmetric()
    assert all(coassociativity().values())
    assert all(counit_check(1).values()) and all(counit_check(2).values())
    assert all(functoriality(2).values())


@pytest.mark.parametrize("family", ["U", "Sp", "SO"])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_stable_classes_fixed(family, n):
    assert all(stability_check(n, family).values())


def test_stable_class_example():
    (c1,) = stable_classes(2)
    assert str(c1) == "-g_{1,1} + e1*u"
    img = induced_map("OplusOne", 1).apply(c1)
    assert str(img) == "e1*u"


def test_forgetful_stable_images():
    rows = forgetful_stable_check(2)
    assert rows[1]["ok"] and rows[3]["ok"]
    # the even class lands on twice the stated multiple
    assert rows[2]["ratio"] == 2


def test_conjecture_evidence_reports():
    rows = conjecture_evidence(2, 4)
    assert [r["degree"] for r in rows] == [0, 1, 2, 3, 4]
    assert rows[0]["monomials"] == 1


def test_bounds():
    with pytest.raises(MapError):
        induced_map("WhitneySum", 3, 2)
    with pytest.raises(MapError):
        induced_map("ForgetSpToU", 3)
    with pytest.raises(MapError):
        induced_map("nonsense", 1)
