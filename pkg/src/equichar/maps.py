"""Induced maps between the presentations, computed by torus substitution and decomposition.

Every map here is built from what it does on torus variables; the displayed
closed forms only appear in :func:`verify_closed_form`, as an oracle.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .coeffs import AQ, QQ, BurnsideCoeff, Y, format_coeff
from .linalg import RowEchelon
from .presentations import GroupId, UnsupportedGroup, family_algebra, family_relations, generator_symbols
from .substitution import SubstitutionMap
from .symmetric import CHI, GammaAlgebra, GeneratorPolynomial, Sym, algebra, gamma
from .torus import TorusPolynomial

KINDS = ("OplusOne", "OplusSigma", "OplusTwoSigma", "WhitneySum", "TensorLine", "Conjugation",
         "ForgetSpToU", "QuatUToSp", "ComplexifySOToU", "ForgetUToSO")

CLI_NAMES = {
    "oplus-one": "OplusOne", "oplus-sigma": "OplusSigma", "oplus-two-sigma": "OplusTwoSigma",
    "whitney": "WhitneySum", "whitney-sum": "WhitneySum", "tensor-line": "TensorLine",
    "conjugation": "Conjugation", "forget-sp-to-u": "ForgetSpToU", "quat-u-to-sp": "QuatUToSp",
    "complexify-so-to-u": "ComplexifySOToU", "forget-u-to-so": "ForgetUToSO",
}

MAX_RANK = 4
X = BurnsideCoeff(0, 1)


class MapError(ValueError):
    pass


def _torus(n, ring=AQ):
    ws = [TorusPolynomial.w(i, n, ring) for i in range(1, n + 1)]
    us = [TorusPolynomial.u(i, n, ring) for i in range(1, n + 1)]
    return ws, us


def _zero(n):
    return TorusPolynomial.zero(n, AQ)


def _y(n):
    return TorusPolynomial.constant(n, Y, AQ)


@dataclass
class RingMapResult:
    kind: str
    source: GroupId
    target: GroupId
    source_alg: GammaAlgebra
    target_alg: GammaAlgebra
    substitution: SubstitutionMap
    images: dict = field(default_factory=dict)
    target_blocks: tuple = ()

    def image(self, sym: Sym) -> GeneratorPolynomial:
        """Image of any source symbol (including the ``gamma_{0,k}`` aliases), computed on demand."""
        hit = self.images.get(sym)
        if hit is None:
            hit = self.target_alg.decompose(self.substitution(self.source_alg.symbol_torus(sym)))
            self.images[sym] = hit
        return hit

    def generators(self):
        return [s for s in generator_symbols(self.source) if s.kind != "delta"]

    def apply(self, gp: GeneratorPolynomial) -> GeneratorPolynomial:
        """Push a source polynomial through the generator images, formally."""
        out = self.target_alg.zero()
        for key, c in gp.terms.items():
            term = self.target_alg.constant(c)
            for s in key:
                term = term * self.image(s)
            out = out + term
        return out

    def to_json(self) -> dict:
        target = {"family": self.target.family, "rank": self.target.rank}
        if len(self.target_blocks) > 1:
            target["blocks"] = list(self.target_blocks)
        return {
            "kind": self.kind,
            "source": {"family": self.source.family, "rank": self.source.rank},
            "target": target,
            "images": [{"generator": self.source_alg.symbol_name(s), "polynomial": str(self.image(s))}
                       for s in self.generators()],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True, ensure_ascii=False)

    def __str__(self):
        head = f"{self.kind}: H({self.source.label()}) -> H({self._target_label()})"
        lines = [head] + [f"  {self.source_alg.symbol_name(s)} |-> {self.image(s)}" for s in self.generators()]
        return "\n".join(lines)

    def _target_label(self):
        if len(self.target_blocks) > 1:
            return " (x) ".join(f"{self.target.family}({b})" for b in self.target_blocks)
        return self.target.label()


def _check_rank(*ranks):
    for r in ranks:
        if r < 1 or r > MAX_RANK:
            raise MapError(f"rank {r} outside 1..{MAX_RANK}")


def _stabilization(family, n, unit):
    """``H(G(n+1)) -> H(G(n))`` adding one torus factor sent to ``w -> 0``, ``u -> unit``."""
    ws, us = _torus(n)
    return SubstitutionMap(n + 1, n, ws + [_zero(n)], us + [unit(n)])


def induced_map(kind: str, n: int, m: int = None, family: str = "U") -> RingMapResult:
    """The ring map of ``kind`` at rank ``n`` (and ``m`` for Whitney sums).

    Rank conventions: ``OplusOne``/``OplusSigma`` go ``H(G(n+1)) -> H(G(n))`` for
    ``G`` in U, Sp; ``OplusOne`` for SO goes ``H(SO(2n+2)) -> H(SO(2n+1))``;
    ``OplusTwoSigma`` goes ``H(SO(n+2)) -> H(SO(n))``; the forgetful maps take the
    quaternionic or real rank ``n``.
    """
    kind = CLI_NAMES.get(kind, kind)
    if kind not in KINDS:
        raise MapError(f"unknown map kind {kind!r}")
    fam = {"u": "U", "sp": "Sp", "so": "SO"}.get(family.lower(), family)
    if kind in ("OplusOne", "OplusSigma"):
        _check_rank(n)
        if fam == "SO":
            if kind == "OplusSigma":
                raise MapError("for SO use OplusTwoSigma")
            src, tgt = GroupId("SO", 2 * n + 2), GroupId("SO", 2 * n + 1)
            f = _stabilization(fam, n, _y)
        elif fam in ("U", "Sp"):
            src, tgt = GroupId(fam, n + 1), GroupId(fam, n)
            f = _stabilization(fam, n, _y if kind == "OplusOne" else _zero)
        else:
            raise MapError(f"{kind} is not available for {fam}")
        return _result(kind, src, tgt, f)
    if kind == "OplusTwoSigma":
        if n < 1 or n > 2 * MAX_RANK:
            raise MapError("OplusTwoSigma needs 1 <= n <= 8")
        k = n // 2
        src, tgt = GroupId("SO", n + 2), GroupId("SO", n)
        ws, us = _torus(k)
        f = SubstitutionMap(k + 1, k, ws + [_zero(k)], us + [_zero(k)])
        return _result(kind, src, tgt, f)
    if kind == "WhitneySum":
        m = 1 if m is None else m
        _check_rank(n, m)
        if n + m > MAX_RANK:
            raise MapError("Whitney sums are bounded by total rank 4")
        src = GroupId("U", n + m)
        ws, us = _torus(n + m)
        f = SubstitutionMap(n + m, n + m, ws, us)
        tgt_alg = algebra((n, m), AQ, "U")
        return _result(kind, src, GroupId("U", n + m), f, tgt_alg, (n, m))
    if kind == "TensorLine":
        if n != 1:
            raise MapError("TensorLine is defined for line bundles (rank 1)")
        ws, us = _torus(2)
        u_img = _y(2) - us[0] - us[1] + (us[0] * us[1]).scale(2)
        f = SubstitutionMap(1, 2, [ws[0] + ws[1]], [u_img])
        return _result(kind, GroupId("U", 1), GroupId("U", 2), f, algebra((1, 1), AQ, "U"), (1, 1))
    if kind == "Conjugation":
        _check_rank(n)
        ws, us = _torus(n)
        f = SubstitutionMap(n, n, [-w for w in ws], us)
        return _result(kind, GroupId("U", n), GroupId("U", n), f)
    if kind in ("ForgetSpToU", "ComplexifySOToU"):
        _check_rank(n)
        if 2 * n > MAX_RANK:
            raise MapError("the source U(2n) must have rank <= 4")
        ws, us = _torus(n)
        f = SubstitutionMap(2 * n, n, ws + [-w for w in ws], us + us)
        tgt = GroupId("Sp", n) if kind == "ForgetSpToU" else GroupId("SO", 2 * n)
        return _result(kind, GroupId("U", 2 * n), tgt, f)
    if kind in ("QuatUToSp", "ForgetUToSO"):
        _check_rank(n)
        ws, us = _torus(n)
        f = SubstitutionMap(n, n, ws, us)
        src = GroupId("Sp", n) if kind == "QuatUToSp" else GroupId("SO", 2 * n)
        return _result(kind, src, GroupId("U", n), f)
    raise MapError(kind)


def _result(kind, src, tgt, f, tgt_alg=None, blocks=None):
    res = RingMapResult(kind, src, tgt, family_algebra(src), tgt_alg or family_algebra(tgt), f,
                        {}, blocks or (tgt.rank,))
    for s in res.generators():
        res.image(s)
    return res


def conjugation_map(n: int) -> RingMapResult:
    return induced_map("Conjugation", n)


# ---------------------------------------------------------------------------
# relation preservation


def preserves_relations(res: RingMapResult) -> dict:
    """Every source relation, pushed through the generator images, expands to zero."""
    out = {}
    x_ok = True
    for s in res.generators():
        if s.kind == "g" and s.i > 0:
            x_ok &= not res.image(s).expand().scale(X)
    out["x_kills_u_classes"] = x_ok
    rel_ok = True
    for entry, lhs, rhs in family_relations(res.source):
        diff = res.apply(lhs - rhs)
        if diff.expand():
            rel_ok = False
            break
    out["relation_set"] = rel_ok
    if res.source.family == "SO" and res.source.rank % 2 == 0:
        k = res.source.rank // 2
        pk = res.apply(res.source_alg.generator(k, 0))
        chi = res.apply(res.source_alg.special(CHI))
        out["euler"] = pk.expand() == (chi * chi).expand()
    return out


# ---------------------------------------------------------------------------
# closed forms


def _g(alg: GammaAlgebra, s, j, block=0):
    """Generator with the conventions ``gamma_{0,0} = 1``, ``gamma_{s,0} = y e_s`` and zero out of range."""
    size = alg.blocks[block]
    if s + j > size or s < 0 or j < 0:
        return alg.zero()
    if s == 0 and j == 0:
        return alg.one()
    if j == 0:
        return alg.generator(s, 0, block) * alg.constant(Y)
    return alg.generator(s, j, block)


def _e(alg: GammaAlgebra, i, block=0):
    if i == 0:
        return alg.one()
    if i < 0 or i > alg.blocks[block]:
        return alg.zero()
    return alg.generator(i, 0, block)


def _binom_u(alg, j, block=0):
    """``gamma_{0,j} = u(u-1)...(u-j+1)/j!`` as a polynomial in ``u``."""
    u = alg.generator(0, 1, block) if alg.blocks[block] else alg.zero()
    out = alg.one()
    for k in range(j):
        out = out * (u - k)
    return out * Fraction(1, _fact(j))


def _fact(k):
    r = 1
    for i in range(2, k + 1):
        r *= i
    return r


def _w_square_sum(alg, i):
    """``sum_{a+b=2i} (-1)^(a+i) e_a e_b`` in the U target."""
    out = alg.zero()
    for a in range(0, 2 * i + 1):
        out = out + _e(alg, a) * _e(alg, 2 * i - a) * ((-1) ** (a + i))
    return out


def _kappa_one(alg, j):
    u = alg.generator(0, 1)
    return (_e(alg, 1) * _g(alg, 1, j) - u * _g(alg, 2, j - 1)
            + _g(alg, 2, j) * (j - 2) + _g(alg, 2, j - 1) * (j - 1))


def expected_image(res: RingMapResult, sym: Sym):
    """Closed-form image of a source generator, or ``("leading", poly)`` when only the leading term is stated."""
    tgt = res.target_alg
    kind = res.kind
    if kind in ("OplusOne", "OplusSigma", "OplusTwoSigma"):
        one = kind == "OplusOne"
        if sym.kind == "chi":
            return tgt.zero()
        if sym.s == 0:
            u = tgt.generator(0, 1) if tgt.n else tgt.zero()
            return u + tgt.constant(Y) if one else u
        if sym.i == 0:
            return _e(tgt, sym.s) if sym.s <= tgt.n else tgt.zero()
        base = _g(tgt, sym.s, sym.i)
        return base + _g(tgt, sym.s, sym.i - 1) if one else base
    if kind == "WhitneySum":
        if sym.s == 0:
            return tgt.generator(0, 1, 0) + tgt.generator(0, 1, 1)
        if sym.i == 0:
            out = tgt.zero()
            for a in range(sym.s + 1):
                out = out + _e(tgt, a, 0) * _e(tgt, sym.s - a, 1)
            return out
        out = tgt.zero()
        for s1 in range(sym.s + 1):
            for j1 in range(sym.i + 1):
                out = out + _coproduct_piece(tgt, s1, j1, 0) * _coproduct_piece(tgt, sym.s - s1, sym.i - j1, 1)
        return out
    if kind == "TensorLine":
        u0, u1 = tgt.generator(0, 1, 0), tgt.generator(0, 1, 1)
        if sym.s == 0:
            return tgt.constant(Y) - u0 - u1 + u0 * u1 * 2
        return tgt.generator(1, 0, 0) + tgt.generator(1, 0, 1)
    if kind == "Conjugation":
        sign = (-1) ** sym.s
        return tgt.generator(sym.s, sym.i) * sign
    if kind in ("ForgetSpToU", "ComplexifySOToU"):
        if sym.s == 0:
            return tgt.generator(0, 1)
        if sym.s % 2:
            return tgt.zero()
        half = sym.s // 2
        if sym.s + sym.i > 2 * tgt.n or half + sym.i > tgt.n:
            return tgt.zero()
        return tgt.generator(half, sym.i) * ((-1) ** half)
    if kind in ("QuatUToSp", "ForgetUToSO"):
        if sym.kind == "chi":
            return _e(tgt, tgt.n)
        if sym.s == 0:
            return tgt.generator(0, 1)
        if sym.i == 0:
            return _w_square_sum(tgt, sym.s)
        if sym.s == 1:
            return _kappa_one(tgt, sym.i)
        return ("leading", _e(tgt, sym.s) * _g(tgt, sym.s, sym.i))
    raise MapError(kind)


def _coproduct_piece(alg, s, j, block):
    if s == 0 and j == 0:
        return alg.one()
    if s == 0:
        return _binom_u(alg, j, block) if j <= alg.blocks[block] else alg.zero()
    return _g(alg, s, j, block)


def verify_closed_form(kind: str, n: int, m: int = None, family: str = "U") -> dict:
    """Compare computed images with the closed forms, generator by generator."""
    res = induced_map(kind, n, m, family)
    rows = []
    for sym in res.generators():
        got = res.image(sym)
        exp = expected_image(res, sym)
        name = res.source_alg.symbol_name(sym)
        if isinstance(exp, tuple):
            lead_got = got.expand().dominant_term()
            lead_exp = exp[1].expand().dominant_term()
            ok = lead_got == lead_exp
            rows.append({"generator": name, "mode": "leading", "ok": ok,
                         "expected": str(exp[1]) + " + lower", "computed": str(got)})
            continue
        diff = got.expand() - exp.expand()
        ok = not diff
        row = {"generator": name, "mode": "exact", "ok": ok, "expected": str(exp), "computed": str(got)}
        if not ok:
            row["difference"] = str(res.target_alg.decompose(diff))
        rows.append(row)
    return {"kind": res.kind, "source": res.source.label(), "target": res._target_label(),
            "ok": all(r["ok"] for r in rows), "rows": rows}


def tail_agreement(n: int) -> dict:
    """The quaternionic and real forgetful images of ``kappa_{s,j}`` and ``pi_{s,j}`` agree."""
    q = induced_map("QuatUToSp", n)
    r = induced_map("ForgetUToSO", n)
    rows = {}
    for sym in q.generators():
        if sym.i > 0:
            rows[f"{sym.s},{sym.i}"] = q.image(sym).terms == r.image(sym).terms
    return {"n": n, "ok": all(rows.values()), "pairs": rows}


# ---------------------------------------------------------------------------
# stable classes


def stable_class(alg: GammaAlgebra, i: int) -> GeneratorPolynomial:
    """``e_i u - gamma_{i,1}`` (with ``gamma_{i,1} = 0`` when it is out of range)."""
    u = alg.generator(0, 1)
    return _e(alg, i) * u - _g(alg, i, 1)


def stable_classes(n: int, family: str = "U"):
    if n < 2:
        raise MapError("stable classes need n >= 2")
    g = GroupId(family, n if family != "SO" else 2 * n + 1)
    alg = family_algebra(g)
    return [stable_class(alg, i) for i in range(1, n)]


def stability_check(n: int, family: str = "U") -> dict:
    """Each stable class at rank ``n`` maps to its rank ``n-1`` namesake under both stabilizations."""
    if n < 2:
        raise MapError("n >= 2 required")
    out = {}
    if family in ("U", "Sp"):
        maps = [("oplus1", induced_map("OplusOne", n - 1, family=family)),
                ("oplus_sigma", induced_map("OplusSigma", n - 1, family=family))]
    elif family == "SO":
        # SO(2n) -> SO(2n-1) and SO(2n) -> SO(2n-2)
        maps = [("oplus1", induced_map("OplusOne", n - 1, family="SO")),
                ("oplus_2sigma", induced_map("OplusTwoSigma", 2 * n - 2))]
    else:
        raise MapError(family)
    for label, res in maps:
        for i in range(1, n):
            src = stable_class(res.source_alg, i)
            img = res.apply(src)
            want = stable_class(res.target_alg, i) if i <= res.target_alg.n else res.target_alg.zero()
            out[f"{label}:{i}"] = img.expand() == want.expand()
    return out


def forgetful_stable_check(n: int) -> dict:
    """Images of the U(2n) stable classes in H(Sp(n)) against ``(-1)^s`` times the symplectic ones."""
    res = induced_map("ForgetSpToU", n)
    rows = {}
    for i in range(1, 2 * n):
        img = res.apply(stable_class(res.source_alg, i))
        if i % 2:
            want = res.target_alg.zero()
        else:
            s = i // 2
            want = stable_class(res.target_alg, s) * ((-1) ** s) if s <= n else res.target_alg.zero()
        diff = img.expand() - want.expand()
        ratio = _ratio(img, want)
        rows[i] = {"ok": not diff, "computed": str(img), "expected": str(want), "ratio": ratio}
    return rows


def _ratio(a: GeneratorPolynomial, b: GeneratorPolynomial):
    pa, pb = a.expand(), b.expand()
    if not pb:
        return None if pa else Fraction(1)
    m = max(pb.terms)
    ca, cb = pa.terms.get(m), pb.terms[m]
    if ca is None:
        return None
    ca = ca.q if isinstance(ca, BurnsideCoeff) else ca
    cb = cb.q if isinstance(cb, BurnsideCoeff) else cb
    r = Fraction(ca) / Fraction(cb)
    return r if pb.scale(r) == pa else None


# ---------------------------------------------------------------------------
# structural checks


def tensor_swap_symmetric() -> bool:
    res = induced_map("TensorLine", 1)
    for sym in res.generators():
        img = res.image(sym)
        swapped = GeneratorPolynomial(img.alg, {tuple(sorted(s._replace(block=1 - s.block) for s in k)): c
                                                for k, c in img.terms.items()})
        if swapped != img:
            return False
    return True


def _shift_blocks(gp: GeneratorPolynomial, alg: GammaAlgebra, offset: int) -> GeneratorPolynomial:
    return GeneratorPolynomial(alg, {tuple(sorted(s._replace(block=s.block + offset) for s in k)): c
                                     for k, c in gp.terms.items()})


def _push_blocks(gp: GeneratorPolynomial, target: GammaAlgebra, split_block: int, split_res: RingMapResult):
    """Replace block ``split_block`` symbols by their Whitney images, shifting other blocks."""
    out = target.zero()
    for key, c in gp.terms.items():
        term = target.constant(c)
        for s in key:
            if s.block == split_block:
                img = split_res.image(s._replace(block=0))
                term = term * _shift_blocks(img, target, split_block)
            else:
                shift = 1 if s.block > split_block else 0
                term = term * GeneratorPolynomial(target, {(s._replace(block=s.block + shift),): 1})
        out = out + term
    return out


def coassociativity(n=1, m=1, k=1) -> dict:
    """Two ways of splitting U(n+m+k) into three Whitney factors agree on every generator."""
    if n + m + k > MAX_RANK:
        raise MapError("total rank bound")
    triple = algebra((n, m, k), AQ, "U")
    left = induced_map("WhitneySum", n + m, k)
    right = induced_map("WhitneySum", n, m + k)
    inner_left = induced_map("WhitneySum", n, m)
    inner_right = induced_map("WhitneySum", m, k)
    out = {}
    for sym in left.generators():
        a = _push_blocks(left.image(sym), triple, 0, inner_left)
        b = _push_blocks(right.image(sym), triple, 1, inner_right)
        direct = triple.decompose(left.source_alg.symbol_torus(sym))
        out[left.source_alg.symbol_name(sym)] = a.expand() == b.expand() == direct.expand()
    return out


def counit_check(n: int) -> dict:
    """Whitney split ``U(n+1) -> U(n) (x) U(1)`` then collapsing the line with ``w -> 0, u -> y`` is ``oplus 1``."""
    whit = induced_map("WhitneySum", n, 1)
    stab = induced_map("OplusOne", n)
    tgt = stab.target_alg
    collapse = {gamma(0, 1, 1): tgt.constant(Y), gamma(1, 0, 1): tgt.zero()}
    out = {}
    for sym in whit.generators():
        acc = tgt.zero()
        for key, c in whit.image(sym).terms.items():
            term = tgt.constant(c)
            for s in key:
                term = term * (collapse[s] if s.block == 1 else GeneratorPolynomial(tgt, {(s,): 1}))
            acc = acc + term
        out[whit.source_alg.symbol_name(sym)] = acc.expand() == stab.image(sym).expand()
    return out


def functoriality(n: int = 2) -> dict:
    """``H(Sp(n)) -> H(U(n)) -> H(Sp(n/2))`` by images against the composite substitution."""
    if n % 2:
        raise MapError("n must be even")
    quat = induced_map("QuatUToSp", n)
    forget = induced_map("ForgetSpToU", n // 2)
    composite = forget.substitution.compose(quat.substitution)
    tgt = forget.target_alg
    out = {}
    for sym in quat.generators():
        if sym.i:
            continue
        stepwise = forget.apply(quat.image(sym))
        direct = tgt.decompose(composite(quat.source_alg.symbol_torus(sym)))
        out[quat.source_alg.symbol_name(sym)] = stepwise.expand() == direct.expand()
    return out


def conjugation_involution(n: int) -> bool:
    res = conjugation_map(n)
    return all(res.apply(res.image(s)) == GeneratorPolynomial(res.source_alg, {(s,): 1}) for s in res.generators())


def conjecture_evidence(n: int, max_degree: int = 6) -> list:
    """Rank data for monomials in ``e_i`` and the stable classes, degree by degree.

    This collects evidence only: for each ``w``-degree it reports the number of
    monomials, the rank of their span, and whether every monomial is stable.
    """
    if n > MAX_RANK or max_degree > 6:
        raise MapError("bounded to n <= 4, degree <= 6")
    alg = family_algebra(GroupId("U", n))
    gens = [(_e(alg, i), i) for i in range(1, n + 1)] + [(stable_class(alg, i), i) for i in range(1, n)]
    rows = []
    for d in range(max_degree + 1):
        monos = _monomials(gens, d)
        ech = RowEchelon()
        for mono in monos:
            vec = {}
            for mk, c in mono.expand().terms.items():
                for idx, v in enumerate(c.components() if isinstance(c, BurnsideCoeff) else (c, 0)):
                    if v:
                        vec[(mk, idx)] = v
            ech.add(vec)
        rows.append({"degree": d, "monomials": len(monos), "rank": ech.rank,
                     "independent": ech.rank == len(monos)})
    return rows


def _monomials(gens, d, start=0):
    if d == 0:
        return [gens[0][0].alg.one()] if gens else []
    out = []
    for idx in range(start, len(gens)):
        g, deg = gens[idx]
        if deg <= d:
            for rest in _monomials(gens, d - deg, idx):
                out.append(g * rest)
    return out
