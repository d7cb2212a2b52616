"""Presentations of the equivariant characteristic-class rings for the classical families.

Each group is realised on a maximal torus: the ring is the Weyl-invariant part of
``A_Q[w_i, u_i]/(u_i^2 = u_i, x u_i)``.  Cohomological degree is twice the
``w``-degree, so ``e_i`` sits in degree ``2i`` and ``k_i``, ``p_i`` (realised in
``w_i^2``) in degree ``4i``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import NamedTuple

from .coeffs import AQ, QQ, BurnsideCoeff, Y
from .groups import EVEN_SIGN, SIGMA, SIGN_ONLY, WREATH, GroupAction, invariant_dimension, is_invariant
from .linalg import RowEchelon
from .relations import basis, dim_u, partition_p, relation_set, weighted_count
from .substitution import SubstitutionMap
from .symmetric import CHI, DELTA, NAMES, GammaAlgebra, GeneratorPolynomial, algebra, gamma
from .torus import TorusPolynomial, format_polynomial

FAMILIES = ("U", "Sp", "SO", "O", "SU")
MAX_RANK = 4

NAMES.setdefault("U_bottom", ("u", "c", "g"))


class UnsupportedGroup(ValueError):
    pass


class DimensionMismatch(AssertionError):
    pass


class GroupId(NamedTuple):
    """``family`` in U, Sp, SO, O, SU; for SO and O the rank is the matrix size."""

    family: str
    rank: int

    def label(self) -> str:
        return f"{self.family}({self.rank})"


def group_id(family: str, rank: int) -> GroupId:
    fam = {"u": "U", "sp": "Sp", "so": "SO", "o": "O", "o_odd": "O", "su": "SU"}.get(family.lower(), family)
    if fam not in FAMILIES:
        raise UnsupportedGroup(f"unknown family {family!r}")
    if rank < 1 or (fam == "SO" and rank < 1):
        raise UnsupportedGroup("rank must be positive")
    if fam == "SU" and rank < 2:
        raise UnsupportedGroup("SU needs rank >= 2")
    return GroupId(fam, rank)


def torus_rank(g: GroupId) -> int:
    if g.family in ("SO", "O"):
        return g.rank // 2
    if g.family == "SU":
        return g.rank - 1
    return g.rank


def family_algebra(g: GroupId, ring=AQ) -> GammaAlgebra:
    n = torus_rank(g)
    if g.family == "U":
        return algebra((n,), ring, "U")
    if g.family == "Sp":
        return algebra((n,), ring, "Sp", square=True)
    if g.family == "SO":
        return algebra((n,), ring, "SO", square=True, chi=(g.rank % 2 == 0))
    if g.family == "O":
        if g.rank % 2 == 0:
            raise UnsupportedGroup("even orthogonal groups only have the quotient descriptions")
        return algebra((n,), ring, "SO", square=True, delta=True)
    # SU: generators named as for U(n), realised through the quotient torus
    return algebra((g.rank,), ring, "U")


def weyl(g: GroupId) -> GroupAction:
    n = torus_rank(g)
    if g.family == "U":
        return GroupAction(SIGMA, n)
    if g.family == "SU":
        return GroupAction(SIGN_ONLY, 1) if g.rank == 2 else GroupAction(SIGMA, g.rank)
    if g.family == "SO" and g.rank % 2 == 0:
        return GroupAction(EVEN_SIGN, n)
    return GroupAction(WREATH, max(n, 1))


def generator_symbols(g: GroupId):
    n = torus_rank(g) if g.family != "SU" else g.rank
    gens = [gamma(0, 1)]
    top = n
    if g.family == "SO" and g.rank % 2 == 0:
        top = n - 1
    gens += [gamma(i, 0) for i in range(1, top + 1)]
    gens += [gamma(s, j) for s in range(1, n) for j in range(1, n - s + 1)]
    if g.family == "SO" and g.rank % 2 == 0 and n >= 1:
        gens.append(CHI)
    if g.family == "O":
        gens.append(DELTA)
    if n == 0:
        gens = [DELTA] if g.family == "O" else []
    return gens


def _check_rank(g: GroupId, limit=MAX_RANK):
    if torus_rank(g) > limit:
        raise UnsupportedGroup(f"{g.label()} exceeds the rank bound {limit}")


# ---------------------------------------------------------------------------
# SU quotient


def su_substitution(n: int) -> SubstitutionMap:
    """Quotient map from the rank-``n`` torus ring onto the SU(n) torus ring in ``n-1`` pairs."""
    m = n - 1
    ws = [TorusPolynomial.w(i, m, AQ) for i in range(1, m + 1)]
    us = [TorusPolynomial.u(i, m, AQ) for i in range(1, m + 1)]
    w_last = TorusPolynomial.zero(m, AQ)
    for w in ws:
        w_last = w_last - w
    u_last = TorusPolynomial.constant(m, Y * Fraction((-1) ** (n + 1) + 1, 2), AQ)
    for i in range(1, m + 1):
        sigma = algebra((m,), AQ).generator(0, i).expand()
        u_last = u_last + sigma.scale((-1) ** n * (-2) ** (i - 1))
    return SubstitutionMap(n, m, ws + [w_last], us + [u_last])


def su_check(n: int) -> dict:
    if n not in (2, 3):
        raise UnsupportedGroup("SU checks are available for n = 2, 3")
    f = su_substitution(n)
    alg = algebra((n,), AQ)
    e1 = f(alg.generator(1, 0).expand())
    g1 = f(alg.generator(1, n - 1).expand())
    report = {"n": n, "e1_vanishes": not e1, f"g_{{1,{n - 1}}}_vanishes": not g1}
    if n == 2:
        u = f(alg.generator(0, 1).expand())
        report["u_squared_is_2u"] = u * u == u.scale(2)
        # e2 -> k1, u -> 2u from the SU(2) presentation to the Sp(1) one
        sp = family_algebra(GroupId("Sp", 1))
        img_u = sp.generator(0, 1).expand().scale(2)
        img_e2 = sp.generator(1, 0).expand()
        rel1 = img_u * img_u - img_u.scale(2)
        rel2 = img_u.scale(BurnsideCoeff(0, 1))
        report["su2_to_sp1_ring_map"] = not rel1 and not rel2 and bool(img_e2)
        # sign of e2 on the torus: w2 = -w1 gives e2 = -w1^2 = -k1
        e2 = f(alg.generator(2, 0).expand())
        report["torus_e2_over_k1"] = _ratio(e2, img_e2)
        report["torus_u_over_u"] = _ratio(u, sp.generator(0, 1).expand())
    return report


def _ratio(p: TorusPolynomial, q: TorusPolynomial):
    """Rational ``c`` with ``p == c q``, or None."""
    if not q:
        return None
    m = max(q.terms)
    c = p.terms.get(m)
    if c is None:
        return None
    c = c.q if isinstance(c, BurnsideCoeff) else c
    return c if q.scale(c) == p else None


# ---------------------------------------------------------------------------
# realisations and presentations


def torus_realization(g: GroupId) -> dict:
    """Generator name -> torus polynomial (over A_Q)."""
    _check_rank(g)
    alg = family_algebra(g)
    out = {}
    if g.family == "SU":
        f = su_substitution(g.rank)
        for sym in generator_symbols(g):
            out[alg.symbol_name(sym)] = f(alg.symbol_torus(sym))
        return out
    for sym in generator_symbols(g):
        out[alg.symbol_name(sym)] = alg.symbol_torus(sym)
    return out


def generator_degree(g: GroupId, sym) -> int:
    alg = family_algebra(g)
    return 2 * alg.symbol_degree(sym)


@dataclass
class Presentation:
    group: GroupId
    coefficient_ring: str
    generators: list
    relations: list
    restriction: dict
    relations_complete: bool = True
    aliases: dict = field(default_factory=dict)
    weyl: GroupAction = None
    torus_rank: int = 0

    def to_json(self) -> dict:
        return {
            "group": self.group.label(),
            "family": self.group.family,
            "rank": self.group.rank,
            "coefficient_ring": "A_Q" if self.coefficient_ring == AQ else "Q",
            "torus_rank": self.torus_rank,
            "weyl": self.weyl.kind if self.weyl else None,
            "generators": [{"name": n, "degree": d, "torus_image": t} for n, d, t in self.generators],
            "relations": list(self.relations),
            "aliases": dict(self.aliases),
            "restriction": dict(self.restriction),
            "relations_complete": self.relations_complete,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True, ensure_ascii=False)

    def __str__(self):
        gens = ", ".join(f"{n}:{d}" for n, d, _ in self.generators)
        lines = [f"{self.group.label()} over {'A_Q' if self.coefficient_ring == AQ else 'Q'}",
                 f"generators (degree): {gens}", "relations:"]
        lines += [f"  {r}" for r in self.relations]
        if self.aliases:
            lines.append("aliases:")
            lines += [f"  {k} = {v}" for k, v in sorted(self.aliases.items())]
        if not self.relations_complete:
            lines.append("(relation list is partial)")
        return "\n".join(lines)


def _relabel(gp: GeneratorPolynomial, alg: GammaAlgebra) -> GeneratorPolynomial:
    return GeneratorPolynomial(alg, gp.terms)


def family_relations(g: GroupId, cache=None):
    """The relation set of rank ``n``, relabelled into the family's generator names."""
    n = torus_rank(g)
    alg = family_algebra(g)
    out = []
    if n == 0:
        return out
    for entry in relation_set(n, cache):
        out.append((entry, _relabel(entry.lhs, alg), _relabel(entry.rhs, alg)))
    return out


def _falling(n: int) -> str:
    return "*".join(["u"] + [f"(u - {k})" for k in range(1, n + 1)])


def presentation(g: GroupId, cache=None) -> Presentation:
    _check_rank(g)
    alg = family_algebra(g)
    n = torus_rank(g) if g.family != "SU" else g.rank
    real = torus_realization(g)
    gens = [(alg.symbol_name(s), generator_degree(g, s), format_polynomial(real[alg.symbol_name(s)]))
            for s in generator_symbols(g)]
    relations = []
    aliases = {}
    complete = True
    if g.family == "SU":
        return _su_presentation(g, alg, gens)
    for sym in generator_symbols(g):
        if sym.kind == "delta" or (sym.kind == "g" and sym.i > 0):
            relations.append(f"x*{alg.symbol_name(sym)} = 0")
    if g.family == "O":
        relations.append("delta^2 = delta")
    if n >= 1:
        relations.append(f"{_falling(n)} = 0")
        for k in range(2, n + 1):
            aliases[alg.symbol_name(gamma(0, k))] = f"{_falling(k - 1)}/{_fact(k)}"
        for _, lhs, rhs in family_relations(g, cache):
            line = f"{lhs} = {rhs}"
            if line not in relations:
                relations.append(line)
    if g.family == "SO" and g.rank % 2 == 0 and n >= 1:
        relations.append(f"p{n} = chi^2")
    res = restriction_images(g)
    return Presentation(g, AQ, gens, relations, res, complete, aliases, weyl(g), torus_rank(g))


def _fact(k):
    out = 1
    for r in range(2, k + 1):
        out *= r
    return out


def _su_presentation(g, alg, gens):
    n = g.rank
    f = su_substitution(n)
    if n == 2:
        # only u and e2 survive
        keep = [t for t in gens if t[0] in ("u", "e2")]
        relations = ["x*u = 0", "u^2 = 2 u"]
        res = {"u": "0", "e2": "c2", "x": "2", "y": "0"}
        return Presentation(g, AQ, keep, relations, res, True, {}, weyl(g), n - 1)
    relations = ["x*u = 0", "e1 = 0", f"g_{{1,{n - 1}}} = 0"]
    res = {"u": "0", "x": "2", "y": "0"}
    return Presentation(g, AQ, gens, relations, res, False, {}, weyl(g), n - 1)


# ---------------------------------------------------------------------------
# restriction and transfer


def res_torus(p: TorusPolynomial) -> TorusPolynomial:
    """Restriction to the underlying nonequivariant ring: ``u_i -> 0``, ``x -> 2``."""
    out = {}
    for m, c in p.terms.items():
        if m[-1]:
            continue
        out[m] = c.components()[0] if isinstance(c, BurnsideCoeff) else c
    return TorusPolynomial(p.n, out, QQ)


def section_torus(p: TorusPolynomial) -> TorusPolynomial:
    return p.promote()


def tr_torus(p: TorusPolynomial) -> TorusPolynomial:
    """Transfer ``Tr(a) = x b`` with ``Res(b) = a``, using the section for ``b``."""
    return section_torus(p).scale(BurnsideCoeff(0, 1))


def _bottom_algebra(g: GroupId) -> GammaAlgebra:
    n = torus_rank(g)
    fam = {"U": "U_bottom", "Sp": "Sp", "SO": "SO", "O": "SO", "SU": "U_bottom"}[g.family]
    return algebra((n,), QQ, fam, square=g.family in ("Sp", "SO", "O"),
                   chi=(g.family == "SO" and g.rank % 2 == 0), delta=(g.family == "O"))


def restriction_images(g: GroupId) -> dict:
    """Generator name -> text of its restriction, computed through the torus."""
    if g.family == "SU":
        raise UnsupportedGroup("SU restriction tables are given with the presentation")
    alg = family_algebra(g)
    bottom = _bottom_algebra(g)
    out = {"x": "2", "y": "0"}
    for sym in generator_symbols(g):
        img = res_torus(alg.symbol_torus(sym))
        out[alg.symbol_name(sym)] = str(bottom.decompose(img))
    return out


@dataclass
class RestrictionData:
    top: Presentation
    res: dict
    checks: dict


def restriction(g: GroupId) -> RestrictionData:
    _check_rank(g)
    if g.family == "SU":
        pres = presentation(g)
        return RestrictionData(pres, pres.restriction, {"res_y_zero": True})
    alg = family_algebra(g)
    res = restriction_images(g)
    checks = {}
    # section: nonequivariant generators are hit by their equivariant namesakes
    for sym in generator_symbols(g):
        if sym.kind == "chi" or (sym.kind == "g" and sym.i == 0):
            p = alg.symbol_torus(sym)
            checks[f"section_{alg.symbol_name(sym)}"] = res_torus(section_torus(res_torus(p))) == res_torus(p)
        else:
            checks[f"kills_{alg.symbol_name(sym)}"] = not res_torus(alg.symbol_torus(sym))
    # Tr o Res = multiplication by x on basis elements up to degree 2 (in w)
    ok = True
    x = BurnsideCoeff(0, 1)
    for key in _small_keys(g, 2):
        b = alg.monomial_torus(key)
        ok &= tr_torus(res_torus(b)) == b.scale(x)
    checks["tr_res_is_x"] = ok
    checks["res_y_zero"] = res["y"] == "0"
    return RestrictionData(presentation(g), res, checks)


def _small_keys(g, max_deg):
    gens = generator_symbols(g)
    alg = family_algebra(g)
    keys = [()]
    for s in gens:
        keys.append((s,))
        for t in gens:
            if s <= t:
                keys.append(tuple(sorted((s, t))))
    return [k for k in keys if sum(alg.symbol_degree(s) for s in k) <= 2 * max_deg]


# ---------------------------------------------------------------------------
# dimensions


def _weighted_basis_count(n: int, d: int) -> int:
    if d < 0:
        return 0
    if n == 0:
        return 2 if d == 0 else 0
    return weighted_count(basis(n, d))


def _delta_count(n: int, d: int) -> int:
    # delta times anything is killed by x, so each basis element counts once
    if d < 0:
        return 0
    if n == 0:
        return 1 if d == 0 else 0
    return len(basis(n, d))


def presentation_dimension(g: GroupId, m: int) -> int:
    """Dimension over Q in w-degree ``m`` counted from the presentation's basis."""
    n = torus_rank(g)
    if g.family == "U":
        return _weighted_basis_count(n, m)
    if g.family == "SU":
        if g.rank != 2:
            raise UnsupportedGroup("SU(n) dimensions need the full relation list, known only for n = 2")
        return 3 if m % 2 == 0 and m >= 0 else 0
    if m % 2 and not (g.family == "SO" and g.rank % 2 == 0):
        return 0
    if g.family == "Sp" or (g.family == "SO" and g.rank % 2 == 1):
        return _weighted_basis_count(n, m // 2)
    if g.family == "SO":
        total = _weighted_basis_count(n, m // 2) if m % 2 == 0 else 0
        rest = m - n
        if rest >= 0 and rest % 2 == 0:
            total += _weighted_basis_count(n, rest // 2)
        return total
    if g.family == "O":
        if g.rank % 2 == 0:
            return o_even_quotient_dimension(g.rank // 2, m)
        return _weighted_basis_count(n, m // 2) + _delta_count(n, m // 2)
    raise UnsupportedGroup(g.label())


def oracle_dimension(g: GroupId, m: int) -> int:
    """Dimension from the Weyl-invariant oracle, or from fixed points for O(2n)."""
    n = torus_rank(g)
    if g.family == "O" and g.rank % 2 == 0:
        return fixed_point_dimension_o(g.rank, m)
    if n == 0:
        if g.family == "O":
            return 3 if m == 0 else 0
        return 2 if m == 0 else 0
    if g.family == "SU" and g.rank != 2:
        raise UnsupportedGroup("SU(n) oracle comparison only for n = 2")
    W = weyl(g)
    extra = 1 if g.family == "O" else 0
    return invariant_dimension(W, W.n, m, ring=AQ, extra_idempotents=extra)


def fixed_point_dimension_o(N: int, m: int) -> int:
    """Q-dimension in w-degree ``m`` of the O(N) ring from its fixed points and underlying space."""
    if m % 2:
        return 0
    k = m // 2
    total = partition_p(N // 2, k)
    for a in range(N + 1):
        b = N - a
        total += sum(partition_p(a // 2, k1) * partition_p(b // 2, k - k1) for k1 in range(k + 1))
    return total


def graded_dimension(g: GroupId, m: int, max_degree: int = 16) -> int:
    """Q-dimension in w-degree ``m`` (cohomological degree ``2m``), computed two ways.

    Raises :class:`DimensionMismatch` if the two counts differ.
    """
    if m > max_degree:
        raise UnsupportedGroup(f"degree {m} exceeds the bound {max_degree}")
    _check_rank(g)
    a = presentation_dimension(g, m)
    b = oracle_dimension(g, m)
    if a != b:
        raise DimensionMismatch(f"{g.label()} degree {m}: presentation {a} vs oracle {b}")
    if g.family == "U" and a != dim_u(g.rank, m):
        raise DimensionMismatch(f"U({g.rank}) degree {m}: {a} vs dim_u {dim_u(g.rank, m)}")
    return a


def dims_table(g: GroupId, max_degree: int):
    rows = []
    for m in range(max_degree + 1):
        rows.append((m, presentation_dimension(g, m), oracle_dimension(g, m)))
    return rows


# ---------------------------------------------------------------------------
# O(2n) as a quotient of the O(2n+1) model


def o_even_relations(n: int):
    """Torus polynomials generating the kernel from the O(2n+1) model to O(2n), for n = 1, 2."""
    g = GroupId("O", 2 * n + 1)
    alg = family_algebra(g)
    one = alg.one()
    u = alg.generator(0, 1)
    d = alg.special(DELTA)
    y = alg.constant(Y)
    falling = alg.one()
    for k in range(n):
        falling = falling * (u - k)
    rels = [falling * (one - d)]
    if n == 1:
        rels.append((y - d) * alg.generator(1, 0))
    elif n == 2:
        rels.append(alg.generator(1, 0) * u * u * (one - d))
        rels.append(alg.generator(2, 0) * (y - d - u + u * d))
    else:
        raise UnsupportedGroup("O(2n) quotient relations are only known for n <= 2")
    return [r.expand() for r in rels]


def _q_vector(p: TorusPolynomial) -> dict:
    out = {}
    for m, c in p.terms.items():
        if isinstance(c, BurnsideCoeff):
            if c.q:
                out[(m, 0)] = c.q
            if c.qx:
                out[(m, 1)] = c.qx
        else:
            out[(m, 0)] = c
    return out


def _o_model_q_basis(n: int, m: int):
    """Q-basis (as torus polynomials) of the O(2n+1) model in w-degree ``m``."""
    g = GroupId("O", 2 * n + 1)
    alg = family_algebra(g)
    if m % 2:
        return []
    x = BurnsideCoeff(0, 1)
    out = []
    for b in basis(n, m // 2):
        p = alg.monomial_torus(b.key)
        out.append(p)
        if b.is_u_free():
            out.append(p.scale(x))
        out.append(p * alg.symbol_torus(DELTA))
    return out


def o_even_quotient_dimension(n: int, m: int) -> int:
    if n not in (1, 2):
        raise UnsupportedGroup("O(2n) is constructible only for n <= 2")
    full = _o_model_q_basis(n, m)
    ech = RowEchelon()
    for r in o_even_relations(n):
        dr = r.degree()
        for b in _o_model_q_basis(n, m - dr) if m - dr >= 0 else []:
            ech.add(_q_vector(r * b))
    return len(full) - ech.rank
