"""The acceptance battery: one function per criterion, each returning labelled sub-checks."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from .coeffs import QQ
from .groups import SIGMA, GroupAction, invariant_dimension, is_invariant, symmetrize
from .maps import (coassociativity, conjugation_involution, counit_check, forgetful_stable_check, functoriality,
                   preserves_relations, induced_map, stability_check, tail_agreement, tensor_swap_symmetric,
                   verify_closed_form)
from .presentations import (GroupId, family_algebra, family_relations, graded_dimension, generator_symbols,
                            su_check, torus_realization, weyl)
from .relations import basis, check_relation, dim_u, minimality_certificate, relation_set, weighted_count
from .stems import bottom_laurent, frobenius, stated_relations, table_consistency
from .symmetric import CHI, algebra
from .torus import TorusPolynomial


@dataclass
class CriterionResult:
    number: int
    title: str
    checks: list = field(default_factory=list)
    seconds: float = 0.0

    def add(self, label: str, ok: bool, info: str = ""):
        self.checks.append((label, bool(ok), info))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failures(self):
        return [(label, info) for label, ok, info in self.checks if not ok]

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        passed = sum(ok for _, ok, _ in self.checks)
        return f"[{status}] {self.number}. {self.title} ({passed}/{len(self.checks)} checks, {self.seconds:.1f}s)"


def _timed(fn):
    def run(*args, **kwargs):
        start = time.perf_counter()
        res = fn(*args, **kwargs)
        res.seconds = time.perf_counter() - start
        return res

    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


def random_invariant(rng: random.Random, n: int, max_degree: int = 6, terms: int = 3) -> TorusPolynomial:
    """Orbit sum of a few random monomials with coefficients in [-9, 9]."""
    acc = {}
    for _ in range(terms):
        d = rng.randint(0, max_degree)
        cuts = sorted(rng.randint(0, d) for _ in range(n - 1))
        a = [b - c for b, c in zip(cuts + [d], [0] + cuts)]
        mask = rng.randrange(1 << n)
        key = tuple(a) + (mask,)
        acc[key] = acc.get(key, 0) + (rng.randint(-9, 9) or 1)
    seed = TorusPolynomial(n, acc, QQ)
    return symmetrize(seed, GroupAction(SIGMA, n))


@_timed
def criterion_1(samples: int = 500, seed: int = 1) -> CriterionResult:
    res = CriterionResult(1, "round-trip decomposition")
    rng = random.Random(seed)
    bad = 0
    for k in range(samples):
        n = 1 + k % 4
        p = random_invariant(rng, n)
        alg = algebra((n,), QQ)
        if alg.decompose(p).expand() != p:
            bad += 1
    res.add(f"{samples} random invariants", bad == 0, f"{bad} failures")
    return res


@_timed
def criterion_2(max_n: int = 4) -> CriterionResult:
    res = CriterionResult(2, "relation soundness and leading law")
    for n in range(1, max_n + 1):
        entries = relation_set(n)
        reports = [(e, check_relation(e)) for e in entries]
        for key in ("identity", "integral_tail", "tail_dominated"):
            bad = [str(e) for e, r in reports if not r[key]]
            res.add(f"n={n} {key}", not bad, "; ".join(bad[:3]))
        bad = [f"(s,i,t,j)=({e.s},{e.i},{e.t},{e.j}) measured {e.leading_coeff} vs {e.expected_leading_coeff()}"
               for e, r in reports if not r["leading_law"]]
        res.add(f"n={n} leading law C(min(i+j+s,n)-t, j)", not bad,
                f"{len(bad)} of {len(entries)} differ, e.g. " + "; ".join(bad[:2]) if bad else "")
    return res


@_timed
def criterion_3(max_n: int = 4, max_d: int = 6) -> CriterionResult:
    res = CriterionResult(3, "basis/dimension triple agreement")
    for n in range(1, max_n + 1):
        W = GroupAction(SIGMA, n)
        bad = []
        for d in range(max_d + 1):
            b = basis(n, d)
            q = invariant_dimension(W, n, d)
            if len(b) != q or weighted_count(b) != dim_u(n, d):
                bad.append(f"d={d}: |basis|={len(b)} oracle={q} weighted={weighted_count(b)} dim_u={dim_u(n, d)}")
        res.add(f"n={n}, d<={max_d}", not bad, "; ".join(bad))
    res.add("dim(1,0) = 3", dim_u(1, 0) == 3 == weighted_count(basis(1, 0)))
    res.add("dim(2,1) = 5", dim_u(2, 1) == 5 == weighted_count(basis(2, 1)))
    return res


@_timed
def criterion_4(max_n: int = 3) -> CriterionResult:
    res = CriterionResult(4, "minimality of the generators")
    for n in range(1, max_n + 1):
        cert = minimality_certificate(n)
        res.add(f"n={n} count = 1 + n + C(n,2)", cert["cardinality"] == cert["expected"],
                f"{cert['cardinality']} vs {cert['expected']}")
        dependent = [name for name, ok in cert["independent"].items() if not ok]
        res.add(f"n={n} no generator in the subalgebra of the others", not dependent,
                "dependent: " + ", ".join(dependent) if dependent else "")
    return res


MAP_CASES = [
    ("OplusOne", 1, None, "U"), ("OplusOne", 2, None, "U"), ("OplusOne", 3, None, "U"),
    ("OplusSigma", 1, None, "U"), ("OplusSigma", 2, None, "U"), ("OplusSigma", 3, None, "U"),
    ("OplusOne", 1, None, "SO"), ("OplusTwoSigma", 2, None, "SO"), ("OplusTwoSigma", 3, None, "SO"),
    ("WhitneySum", 1, 1, "U"), ("WhitneySum", 2, 1, "U"), ("TensorLine", 1, None, "U"),
    ("Conjugation", 1, None, "U"), ("Conjugation", 2, None, "U"), ("Conjugation", 3, None, "U"),
    ("ForgetSpToU", 1, None, "U"), ("ForgetSpToU", 2, None, "U"),
    ("ComplexifySOToU", 1, None, "U"), ("ComplexifySOToU", 2, None, "U"),
    ("QuatUToSp", 1, None, "U"), ("QuatUToSp", 2, None, "U"), ("QuatUToSp", 3, None, "U"),
    ("ForgetUToSO", 1, None, "U"), ("ForgetUToSO", 2, None, "U"),
]


@_timed
def criterion_5() -> CriterionResult:
    res = CriterionResult(5, "induced maps against closed forms")
    for kind, n, m, fam in MAP_CASES:
        rep = verify_closed_form(kind, n, m, fam)
        label = f"{kind} {rep['source']} -> {rep['target']}"
        for row in rep["rows"]:
            info = "" if row["ok"] else f"computed {row['computed']}, stated {row['expected']}"
            res.add(f"{label}: {row['generator']} ({row['mode']})", row["ok"], info)
        pres = preserves_relations(induced_map(kind, n, m, fam))
        res.add(f"{label}: preserves relations", all(pres.values()), str(pres))
    for n in (1, 2, 3):
        rep = tail_agreement(n)
        res.add(f"quaternionic and real tails agree, n={n}", rep["ok"], str(rep["pairs"]))
    res.add("Whitney coassociativity (1,1,1)", all(coassociativity().values()))
    res.add("Whitney counit n=1,2", all(counit_check(1).values()) and all(counit_check(2).values()))
    res.add("TensorLine swap symmetry", tensor_swap_symmetric())
    res.add("functoriality Sp(2) -> U(2) -> Sp(1)", all(functoriality(2).values()))
    res.add("conjugation is an involution", all(conjugation_involution(n) for n in (1, 2, 3)))
    return res


@_timed
def criterion_6() -> CriterionResult:
    res = CriterionResult(6, "stable classes")
    for fam in ("U", "Sp", "SO"):
        for n in range(2, 5):
            rep = stability_check(n, fam)
            bad = [k for k, v in rep.items() if not v]
            res.add(f"{fam} rank {n} stable under both stabilizations", not bad, ", ".join(bad))
    for n in (1, 2):
        for i, row in forgetful_stable_check(n).items():
            res.add(f"U({2 * n}) -> Sp({n}) image of stable class {i}", row["ok"],
                    "" if row["ok"] else f"computed {row['computed']}, stated {row['expected']}")
    return res


@_timed
def criterion_7(max_n: int = 3) -> CriterionResult:
    res = CriterionResult(7, "relation transport to Sp and SO")
    for n in range(1, max_n + 1):
        for g in (GroupId("Sp", n), GroupId("SO", 2 * n + 1), GroupId("SO", 2 * n)):
            bad = [f"{lhs} = {rhs}" for _, lhs, rhs in family_relations(g) if lhs.expand() != rhs.expand()]
            res.add(f"{g.label()} relations hold on the torus", not bad, "; ".join(bad[:2]))
            W = weyl(g)
            inv = all(is_invariant(p, W) for p in torus_realization(g).values())
            res.add(f"{g.label()} generators are Weyl invariant", inv)
        g = GroupId("SO", 2 * n)
        alg = family_algebra(g)
        pn = alg.generator(n, 0).expand()
        chi = alg.special(CHI).expand()
        res.add(f"SO({2 * n}): p{n} = chi^2", pn == chi * chi)
    return res


@_timed
def criterion_8() -> CriterionResult:
    res = CriterionResult(8, "SU checks")
    for n in (2, 3):
        rep = su_check(n)
        for key, val in rep.items():
            if isinstance(val, bool):
                res.add(f"SU({n}) {key}", val)
    return res


@_timed
def criterion_9() -> CriterionResult:
    res = CriterionResult(9, "stable stems")
    for key, ok in table_consistency(3).items():
        res.add(f"table {key}", ok)
    for key, ok in stated_relations().items():
        res.add(key, ok)
    res.add("Frobenius reciprocity on 100 random pairs", frobenius(100))
    res.add("bottom Laurent ring and Weyl action", bottom_laurent(3))
    return res


@_timed
def dims_check(max_rank: int = 3, max_degree: int = 8) -> CriterionResult:
    """Presentation counts against the oracle for every family (part of the appendix suite)."""
    res = CriterionResult(0, "graded dimensions, presentation vs oracle")
    groups = [GroupId("U", r) for r in range(1, max_rank + 1)]
    groups += [GroupId("Sp", r) for r in range(1, max_rank + 1)]
    groups += [GroupId("SO", r) for r in range(1, 2 * max_rank + 2)]
    groups += [GroupId("O", r) for r in (1, 2, 3, 4, 5, 7)] + [GroupId("SU", 2)]
    for g in groups:
        ok = True
        info = ""
        try:
            for m in range(max_degree + 1):
                graded_dimension(g, m)
        except AssertionError as exc:
            ok, info = False, str(exc)
        res.add(g.label(), ok, info)
    return res


SUITES = {
    "appendix": (criterion_1, criterion_2, criterion_3, criterion_4, criterion_7, dims_check),
    "maps": (criterion_5, criterion_6, criterion_8),
    "stems": (criterion_9,),
}
SUITES["all"] = SUITES["appendix"] + SUITES["maps"] + SUITES["stems"]


def run_suite(name: str = "all"):
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    return [fn() for fn in SUITES[name]]
