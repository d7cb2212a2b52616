"""Relations between gamma generators, the admissible basis, dimension counts and minimality."""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from pathlib import Path

from .coeffs import QQ
from .linalg import RowEchelon
from .symmetric import GeneratorPolynomial, Sym, admissible_flags, algebra, gamma, _partitions_bounded
from .torus import TorusPolynomial

CACHE_ENV = "EQUICHAR_CACHE"


class IndexWindowError(ValueError):
    pass


@dataclass(frozen=True)
class RelationEntry:
    """``gamma_{s,i} gamma_{t,j} = leading_coeff * e_t gamma_{s,m} + tail`` with ``m = min(i+j, n-s)``."""

    s: int
    i: int
    t: int
    j: int
    n: int
    leading_coeff: int
    leading_product: tuple
    tail: GeneratorPolynomial

    @property
    def lhs(self) -> GeneratorPolynomial:
        alg = self.tail.alg
        return alg.generator(self.s, self.i) * alg.generator(self.t, self.j)

    @property
    def rhs(self) -> GeneratorPolynomial:
        alg = self.tail.alg
        return GeneratorPolynomial(alg, {self.leading_product: self.leading_coeff}) + self.tail

    def expected_leading_coeff(self) -> int:
        return comb(min(self.i + self.j + self.s, self.n) - self.t, self.j)

    def counted_leading_coeff(self) -> int:
        """Direct count of the ways the product reaches the leading dominant term.

        Equals the binomial above when ``n >= i+j+s``; when the u-part is cut
        off at ``n - s`` the two u-sets may overlap and an extra factor appears.
        """
        over = max(0, self.i + self.j + self.s - self.n)
        return comb(min(self.i + self.j + self.s, self.n) - self.t, self.j) * comb(self.j, over)

    def key(self) -> str:
        return cache_key(self.s, self.i, self.t, self.j, self.n)

    def __str__(self):
        return f"{self.lhs} = {self.rhs}"


def in_window(s, i, t, j, n) -> bool:
    return 0 <= s <= t <= s + i and 0 < i <= n - s and 0 < j <= n - t


def window(n: int):
    """All quadruples ``(s, i, t, j)`` of the relation window, ordered by ``(s, t, i, j)``."""
    out = []
    for s in range(n + 1):
        for t in range(s, n + 1):
            for i in range(1, n - s + 1):
                for j in range(1, n - t + 1):
                    if in_window(s, i, t, j, n):
                        out.append((s, i, t, j))
    return out


def cache_key(s, i, t, j, n) -> str:
    return f"rel/n{n}/s{s}i{i}t{t}j{j}"


class RelationCache:
    """One JSON file per relation under ``root``; writes are atomic (temp file + rename)."""

    def __init__(self, root):
        self.root = Path(root)

    def path(self, key: str) -> Path:
        return self.root / (key + ".json")

    def get(self, key: str):
        p = self.path(key)
        try:
            with open(p, encoding="utf-8") as fh:
                doc = json.load(fh)
        except (OSError, ValueError):
            return None
        return doc.get("value") if doc.get("key") == key else None

    def put(self, key: str, value) -> None:
        p = self.path(key)
        p.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=p.parent, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump({"key": key, "value": value}, fh, sort_keys=True, indent=1)
            os.replace(tmp, p)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise


def default_cache():
    root = os.environ.get(CACHE_ENV)
    return RelationCache(root) if root else None


def _product_decomposition(s, i, t, j, n, cache):
    alg = algebra((n,), QQ)
    key = cache_key(s, i, t, j, n)
    if cache is not None:
        hit = cache.get(key)
        if hit is not None:
            return GeneratorPolynomial.from_json(alg, hit)
    lhs = alg.generator(s, i) * alg.generator(t, j)
    rhs = alg.decompose(lhs.expand())
    if cache is not None:
        cache.put(key, rhs.to_json())
    return rhs


def relation(s, i, t, j, n, cache=None) -> RelationEntry:
    """Measure the relation for ``gamma_{s,i} gamma_{t,j}`` by decomposing the expanded product."""
    if not in_window(s, i, t, j, n):
        raise IndexWindowError(f"(s,i,t,j,n) = {(s, i, t, j, n)} is outside the relation window")
    alg = algebra((n,), QQ)
    rhs = _product_decomposition(s, i, t, j, n, cache)
    lead = GeneratorPolynomial(alg, {(gamma(t, 0), gamma(s, min(i + j, n - s))): 1})
    (lead_key,) = lead.terms
    c = rhs.terms.get(lead_key, Fraction(0))
    if c.denominator != 1:
        raise ArithmeticError(f"leading coefficient {c} is not an integer")
    tail = rhs - lead * c
    return RelationEntry(s, i, t, j, n, int(c), lead_key, tail)


def relation_set(n: int, cache=None):
    if n < 1:
        raise ValueError("n must be positive")
    return [relation(s, i, t, j, n, cache) for s, i, t, j in window(n)]


def check_relation(entry: RelationEntry) -> dict:
    """Re-expansion, leading law, integrality and dominance checks for one entry."""
    alg = entry.tail.alg
    lhs_t = entry.lhs.expand()
    rhs_t = entry.rhs.expand()
    lead_dom = alg.monomial_torus(entry.leading_product).dominant_term()
    dominated = all(alg.monomial_torus(k).dominant_term() < lead_dom for k in entry.tail.terms)
    integral = all(Fraction(c).denominator == 1 for c in entry.tail.terms.values())
    return {
        "identity": lhs_t == rhs_t,
        "leading_law": entry.leading_coeff == entry.expected_leading_coeff(),
        "leading_count": entry.leading_coeff == entry.counted_leading_coeff(),
        "integral_tail": integral,
        "tail_dominated": dominated,
    }


def tail_signature(entry: RelationEntry):
    """Right-hand side as a name-level mapping, for comparing the same relation across ranks."""
    alg = entry.tail.alg
    return {alg.format_key(k): c for k, c in entry.rhs.terms.items()}


def truncate(gp: GeneratorPolynomial, n: int) -> dict:
    """Name-level terms of ``gp`` after setting generators that do not exist in rank ``n`` to zero."""
    alg = gp.alg
    return {alg.format_key(k): c for k, c in gp.terms.items() if all(s.s + s.i <= n for s in k)}


def stability_report(s, i, t, j, n, cache=None) -> dict:
    """Compare the relation in ranks ``n`` and ``n+1``.

    ``literal`` compares the right-hand sides symbol for symbol; ``truncated``
    first drops from the rank ``n+1`` side the generators that vanish in rank ``n``.
    """
    a = relation(s, i, t, j, n, cache)
    b = relation(s, i, t, j, n + 1, cache)
    return {
        "literal": tail_signature(a) == tail_signature(b),
        "truncated": tail_signature(a) == truncate(b.rhs, n),
    }


def binomial_u(k: int, n: int) -> GeneratorPolynomial:
    """``u(u-1)...(u-k+1)/k!`` in rank ``n``."""
    alg = algebra((n,), QQ)
    u = alg.generator(0, 1)
    out = alg.one()
    for r in range(k):
        out = out * (u - r)
    return out * Fraction(1, factorial(k))


def type_one_report(n: int) -> dict:
    """Checks of the degree-0 relation ``u(u-1)...(u-n) = 0`` in rank ``n``."""
    alg = algebra((n,), QQ)
    u = alg.generator(0, 1)
    prod = alg.one()
    for r in range(n + 1):
        prod = prod * (u - r)
    gammas_ok = all(binomial_u(k, n).expand() == alg.generator(0, k).expand() for k in range(1, n + 1))
    # u^{n+1} decomposed and re-expressed through the binomial formula
    power = alg.decompose((u ** (n + 1)).expand())
    via_binomials = alg.zero()
    for key, c in power.terms.items():
        (sym,) = key
        via_binomials = via_binomials + binomial_u(sym.i, n) * c
    difference = (u ** (n + 1)) - via_binomials
    # u^{n+1} = sum r_m u^m read off the product form, to compare with the (-1)^n n! formula
    r1 = -_u_coefficient(n + 1)
    return {
        "product_vanishes": not prod.expand(),
        "gamma0_binomial": gammas_ok,
        "power_reproduces_product": _is_multiple_of_falling(difference, n),
        "r1_product_form": r1,
        "r1_formula": (-1) ** n * factorial(n),
        "r1_sign_agrees": r1 == (-1) ** n * factorial(n),
    }


def _u_coefficient(k):
    # coefficient of u^1 in u(u-1)...(u-k+1)
    c = 1
    for r in range(1, k):
        c *= -r
    return c


def _is_multiple_of_falling(gp: GeneratorPolynomial, n: int) -> bool:
    # a polynomial in u alone that vanishes on the torus is a multiple of u(u-1)...(u-n)
    coeffs = {}
    for key, c in gp.terms.items():
        if any(s != gamma(0, 1) for s in key):
            return False
        coeffs[len(key)] = c
    deg = max(coeffs, default=-1)
    poly = [coeffs.get(k, 0) for k in range(deg + 1)]
    for root in range(n + 1):
        if sum(Fraction(c) * root**k for k, c in enumerate(poly)) != 0:
            return False
    return True


# ---------------------------------------------------------------------------
# basis and dimension counts


@dataclass(frozen=True)
class BasisElement:
    e_exponents: tuple
    gamma_flags: tuple

    @property
    def key(self) -> tuple:
        syms = [gamma(t, r) for t, r in self.gamma_flags]
        for l, r in enumerate(self.e_exponents, start=1):
            syms.extend([gamma(l, 0)] * r)
        return tuple(sorted(syms))

    @property
    def degree(self) -> int:
        return sum(l * r for l, r in enumerate(self.e_exponents, start=1)) + sum(t for t, _ in self.gamma_flags)

    def is_u_free(self) -> bool:
        return not self.gamma_flags


def basis(n: int, d: int):
    """Admissible basis elements of degree ``d`` in rank ``n``, in a fixed order."""
    if n < 1 or d < 0:
        raise ValueError("need n >= 1 and d >= 0")
    out = []
    for flags in admissible_flags(n, d):
        rest = d - sum(t for t, _ in flags)
        if rest < 0:
            continue
        for mult in _partitions_bounded(rest, n):
            out.append(BasisElement(tuple(mult), tuple(flags)))
    return out


def weighted_count(elements) -> int:
    """Q-dimension over the Burnside ring: u-free elements also carry an ``x`` multiple."""
    return sum(2 if b.is_u_free() else 1 for b in elements)


@lru_cache(maxsize=None)
def partition_p(n: int, m: int) -> int:
    """Number of ``a_1 >= ... >= a_n >= 0`` with sum ``m``."""
    if m < 0:
        return 0
    if n == 0:
        return 1 if m == 0 else 0
    if m == 0:
        return 1
    return partition_p(n, m - n) + partition_p(n - 1, m)


def dim_u(n: int, m: int) -> int:
    return partition_p(n, m) + sum(partition_p(i, j) * partition_p(n - i, m - j)
                                   for i in range(n + 1) for j in range(m + 1))


# ---------------------------------------------------------------------------
# minimality


def generator_list(n: int):
    """Minimal generating symbols in rank ``n``: ``u``, ``e_1..e_n`` and ``gamma_{s,j}`` with ``s, j >= 1``."""
    gens = [gamma(0, 1)] + [gamma(s, 0) for s in range(1, n + 1)]
    gens += [gamma(s, j) for s in range(1, n) for j in range(1, n - s + 1)]
    return gens


def _monomials_of_degree(gens, d):
    """Multisets of positive-degree generators with total degree ``d``."""
    gens = sorted(gens)
    out = []

    def rec(k, acc, left):
        if left == 0:
            out.append(tuple(acc))
            return
        for idx in range(k, len(gens)):
            g = gens[idx]
            if g.s <= left:
                acc.append(g)
                rec(idx, acc, left - g.s)
                acc.pop()

    rec(0, [], d)
    return out


def minimality_certificate(n: int, max_n: int = 3) -> dict:
    """Check that no generator of positive degree lies in the subalgebra generated by the others."""
    if n > max_n:
        raise ValueError(f"minimality certificate limited to n <= {max_n}")
    alg = algebra((n,), QQ)
    gens = generator_list(n)
    u = gamma(0, 1)
    results = {}
    for g in gens:
        if g == u:
            continue
        others = [h for h in gens if h != g and h != u]
        ech = RowEchelon()
        for mono in _monomials_of_degree(others, g.s):
            for a in range(n + 1):
                ech.add(alg.monomial_torus(tuple(sorted(mono + (u,) * a))).terms)
        results[alg.symbol_name(g)] = not ech.contains(alg.monomial_torus((g,)).terms)
    return {
        "n": n,
        "generators": [alg.symbol_name(g) for g in gens],
        "cardinality": len(gens),
        "expected": 1 + n + comb(n, 2),
        "independent": results,
        "ok": all(results.values()) and len(gens) == 1 + n + comb(n, 2),
    }
