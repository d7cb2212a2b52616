"""The gamma generators of the symmetric invariants of ``R = k[w_i, u_i]/(u_i^2 = u_i)``.

For ``s, i >= 0`` with ``s + i <= n`` the generator ``gamma_{s,i}`` is the sum of
``w_{m_1}...w_{m_s} u_{l_1}...u_{l_i}`` over disjoint index sets.  Every
symmetric polynomial is a unique combination of *admissible* products
``prod e_l^{r_l} prod gamma_{t_k,r_k}`` (``r_k >= 1``, ``t_k + r_k < t_{k+1}``);
:func:`decompose` finds it by repeatedly cancelling the dominant term.

The same machinery handles a few variants needed by the other group families:
products of several blocks of variables (tensor products), generators in the
squares ``w_i^2``, an extra Euler class ``chi = w_1...w_n`` and an extra
idempotent ``delta`` with no ``w`` partner.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import NamedTuple

from .coeffs import AQ, QQ, coerce, describe, format_coeff, parse_coeff, zero
from .groups import act_monomial
from .torus import NotHomogeneous, TorusPolynomial, VariableMismatch, mono_degree


class NotInvariant(ValueError):
    pass


class NotOrbitMaximal(ValueError):
    pass


class Sym(NamedTuple):
    """A generator symbol: ``gamma_{s,i}`` on a block, or the special ``chi``/``delta``."""

    s: int
    i: int
    block: int = 0
    kind: str = "g"


CHI = Sym(0, 0, 0, "chi")
DELTA = Sym(0, 0, 0, "delta")


def gamma(s, i, block=0) -> Sym:
    return Sym(s, i, block, "g")


NAMES = {"U": ("u", "e", "g"), "Sp": ("u", "k", "kappa"), "SO": ("u", "p", "pi")}


# ---------------------------------------------------------------------------
# expansions


@lru_cache(maxsize=None)
def _gamma_terms(s, i, n):
    out = {}
    idx = range(n)
    for ws in combinations(idx, s):
        rest = [k for k in idx if k not in ws]
        for us in combinations(rest, i):
            a = [0] * n
            for k in ws:
                a[k] = 1
            mask = 0
            for k in us:
                mask |= 1 << (n - 1 - k)
            out[tuple(a) + (mask,)] = 1
    return out


def gamma_expand(s: int, i: int, n: int, ring=QQ) -> TorusPolynomial:
    """Torus expansion of ``gamma_{s,i}`` in rank ``n``."""
    if s < 0 or i < 0:
        raise ValueError("gamma indices must be non-negative")
    if s + i > n:
        raise ValueError(f"gamma_{{{s},{i}}} needs s + i <= n = {n}")
    return TorusPolynomial(n, dict(_gamma_terms(s, i, n)), ring)


def is_orbit_max(m, blocks=None) -> bool:
    """True when the pairs ``(a_k, eps_k)`` are weakly decreasing inside every block."""
    n = len(m) - 1
    blocks = blocks or (n,)
    mask = m[-1]
    start = 0
    for size in blocks:
        prev = None
        for k in range(start, start + size):
            cur = (m[k], (mask >> (n - 1 - k)) & 1)
            if prev is not None and cur > prev:
                return False
            prev = cur
        start += size
    return True


def _orbit_scan_max(m, n) -> bool:
    # debug cross-check: compare against every permutation
    from itertools import permutations
    best = max(act_monomial((p, (1,) * n), m)[1] for p in permutations(range(n)))
    return best == m


def _block_transpositions(blocks, total):
    gens = []
    start = 0
    ident = (1,) * total
    for size in blocks:
        for k in range(start, start + size - 1):
            perm = list(range(total))
            perm[k], perm[k + 1] = perm[k + 1], perm[k]
            gens.append((tuple(perm), ident))
        start += size
    return gens


def _check_symmetric(p: TorusPolynomial, blocks):
    for g in _block_transpositions(blocks, p.n):
        for m, c in p.terms.items():
            _, img = act_monomial(g, m)
            if p.terms.get(img) != c:
                raise NotInvariant(f"polynomial is not symmetric (monomial {m} vs {img})")


# ---------------------------------------------------------------------------
# the dominant-term factorisation


def factor_for_dominant(M, n: int, check: bool = False):
    """Admissible product whose expansion has dominant term ``M`` with coefficient 1.

    Returns ``(symbols, coefficient)``.  The gamma factors are read off the
    maximal runs of set idempotent bits (a run starting at position ``p`` of
    length ``r`` gives ``gamma_{p-1,r}``); the remaining w-exponents form a
    weakly decreasing vector which is a product of elementary symmetric
    polynomials.
    """
    if len(M) != n + 1:
        raise VariableMismatch(f"monomial {M} is not in rank {n}")
    if not is_orbit_max(M):
        raise NotOrbitMaximal(f"{M} is not the largest monomial in its orbit")
    if check and n <= 6 and not _orbit_scan_max(M, n):
        raise NotOrbitMaximal(f"{M} fails the orbit scan")
    mask = M[-1]
    bits = [(mask >> (n - 1 - k)) & 1 for k in range(n)]
    runs = []
    k = 0
    while k < n:
        if bits[k]:
            start = k
            while k < n and bits[k]:
                k += 1
            runs.append((start, k - start))
        else:
            k += 1
    syms = [gamma(start, length) for start, length in runs]
    rest = list(M[:-1])
    for start, _ in runs:
        for pos in range(start):
            rest[pos] -= 1
    rest.append(0)
    for l in range(1, n + 1):
        mult = rest[l - 1] - rest[l]
        if mult < 0:
            raise NotOrbitMaximal(f"{M} leaves a non-decreasing e-part")
        syms.extend([gamma(l, 0)] * mult)
    key = tuple(sorted(syms))
    coeff = _product_expansion(key, (n,)).get(M, 0)
    if coeff != 1:
        hit = _search_factor(M, n)
        if hit is None:
            raise ArithmeticError(f"no admissible product has dominant term {M}")
        return hit
    return key, coeff


def admissible_flags(n: int, max_degree=None):
    """All admissible sets of flagged ``gamma_{t,r}`` (``r >= 1``) in rank ``n``, as tuples of ``(t, r)``."""
    out = []

    def rec(start, acc, deg):
        out.append(tuple(acc))
        for t in range(start, n):
            if max_degree is not None and deg + t > max_degree:
                break
            for r in range(1, n - t + 1):
                acc.append((t, r))
                rec(t + r + 1, acc, deg + t)
                acc.pop()

    rec(0, [], 0)
    return out


def _partitions_bounded(d, largest):
    """Multiplicity vectors ``r_1..r_largest`` with ``sum l*r_l = d``."""
    if largest == 0:
        if d == 0:
            yield ()
        return
    for k in range(d // largest, -1, -1):
        for rest in _partitions_bounded(d - k * largest, largest - 1):
            yield rest + (k,)


def _search_factor(M, n):
    # bounded search over all admissible products of the right degree
    d = mono_degree(M)
    for flags in admissible_flags(n, d):
        fdeg = sum(t for t, _ in flags)
        for mult in _partitions_bounded(d - fdeg, n):
            syms = [gamma(t, r) for t, r in flags]
            for l, r in enumerate(mult, start=1):
                syms.extend([gamma(l, 0)] * r)
            key = tuple(sorted(syms))
            exp = _product_expansion(key, (n,))
            if exp and max(exp) == M:
                return key, exp[M]
    return None


# cache of full expansions of symbol products over Q, keyed by (symbols, blocks)
_EXPANSIONS: dict = {}


def _symbol_terms(sym: Sym, blocks):
    total = sum(blocks)
    offset = sum(blocks[: sym.block])
    size = blocks[sym.block]
    if sym.s == 0 and sym.i == 0:
        return {(0,) * total + (0,): 1}
    local = _gamma_terms(sym.s, sym.i, size)
    out = {}
    for m, c in local.items():
        a = [0] * total
        a[offset: offset + size] = m[:-1]
        mask = m[-1] << (total - offset - size)
        out[tuple(a) + (mask,)] = c
    return out


def _mul_terms(t1, t2):
    out = {}
    for m1, c1 in t1.items():
        a1, k1 = m1[:-1], m1[-1]
        for m2, c2 in t2.items():
            key = tuple(x + y for x, y in zip(a1, m2[:-1])) + (k1 | m2[-1],)
            out[key] = out.get(key, 0) + c1 * c2
    return {m: c for m, c in out.items() if c}


def _product_expansion(key, blocks):
    """Expansion of a product of gamma symbols as a dict of integer coefficients."""
    full = (key, blocks)
    hit = _EXPANSIONS.get(full)
    if hit is not None:
        return hit
    if not key:
        res = {(0,) * sum(blocks) + (0,): 1}
    else:
        res = _mul_terms(_product_expansion(key[:-1], blocks), _symbol_terms(key[-1], blocks))
    _EXPANSIONS[full] = res
    return res


def _rep_expansion(key, blocks):
    full = ("rep", key, blocks)
    hit = _EXPANSIONS.get(full)
    if hit is None:
        hit = {m: c for m, c in _product_expansion(key, blocks).items() if is_orbit_max(m, blocks)}
        _EXPANSIONS[full] = hit
    return hit


def _decompose_blocks(p: TorusPolynomial, blocks, check=True) -> dict:
    """Core loop: coefficients of admissible products (keys) for a block-symmetric ``p``."""
    if check:
        _check_symmetric(p, blocks)
    rep = {m: c for m, c in p.terms.items() if is_orbit_max(m, blocks)}
    result: dict = {}
    total = sum(blocks)
    while rep:
        M = max(rep)
        c = rep[M]
        key = _factor_blocks(M, blocks, total)
        exp = _rep_expansion(key, blocks)
        cP = exp[M]
        coef = c / cP
        result[key] = result[key] + coef if key in result else coef
        for m, v in exp.items():
            nv = rep.get(m, 0) - coef * v
            if nv:
                rep[m] = nv
            else:
                rep.pop(m, None)
        if M in rep:
            raise ArithmeticError(f"dominant term {M} did not cancel")
    return {k: v for k, v in result.items() if v}


def _factor_blocks(M, blocks, total):
    if len(blocks) == 1:
        return factor_for_dominant(M, total)[0]
    syms = []
    start = 0
    for b, size in enumerate(blocks):
        local = tuple(M[start:start + size]) + ((M[-1] >> (total - start - size)) & ((1 << size) - 1),)
        key, _ = factor_for_dominant(local, size)
        syms.extend(Sym(s.s, s.i, b, s.kind) for s in key)
        start += size
    return tuple(sorted(syms))


# ---------------------------------------------------------------------------
# generator polynomials


class GammaAlgebra:
    """A symmetric-invariant ring together with its gamma generators.

    ``blocks`` lists the ranks of the tensor factors; ``square`` realises every
    generator in ``w_i^2`` (symplectic and odd orthogonal families); ``chi``
    adjoins the Euler class ``w_1...w_n``; ``delta`` adjoins an idempotent
    living in an extra torus slot with no ``w``.
    """

    def __init__(self, blocks, ring=QQ, family="U", square=False, chi=False, delta=False):
        if isinstance(blocks, int):
            blocks = (blocks,)
        blocks = tuple(blocks)
        if any(b < 0 for b in blocks) or not blocks:
            raise ValueError("block ranks must be non-negative")
        if (chi or delta) and len(blocks) != 1:
            raise ValueError("chi and delta are only supported on a single block")
        self.blocks = blocks
        self.ring = ring
        self.family = family
        self.square = square
        self.chi = chi
        self.delta = delta
        self.n = sum(blocks)
        self.torus_n = self.n + (1 if delta else 0)
        self._sym_cache: dict = {}

    def __repr__(self):
        return (f"GammaAlgebra(blocks={self.blocks}, ring={self.ring!r}, family={self.family!r}, "
                f"square={self.square}, chi={self.chi}, delta={self.delta})")

    def signature(self):
        return (self.blocks, self.ring, self.family, self.square, self.chi, self.delta)

    def __eq__(self, other):
        return isinstance(other, GammaAlgebra) and self.signature() == other.signature()

    def __hash__(self):
        return hash(self.signature())

    # naming
    def symbol_name(self, sym: Sym) -> str:
        if sym.kind == "chi":
            return "chi"
        if sym.kind == "delta":
            return "delta"
        unit, elem, mixed = NAMES[self.family]
        if sym.s == 0 and sym.i == 1:
            return unit
        if sym.i == 0:
            return f"{elem}{sym.s}"
        return f"{mixed}_{{{sym.s},{sym.i}}}"

    def symbol_degree(self, sym: Sym) -> int:
        """Degree in the torus variables ``w`` (cohomological degree is twice this)."""
        if sym.kind == "chi":
            return self.n
        if sym.kind == "delta":
            return 0
        return 2 * sym.s if self.square else sym.s

    def generator(self, s, i=0, block=0) -> "GeneratorPolynomial":
        if s == 0 and i == 0:
            return self.one()
        size = self.blocks[block]
        if s + i > size:
            raise ValueError(f"gamma_{{{s},{i}}} does not exist in rank {size}")
        return GeneratorPolynomial(self, {(gamma(s, i, block),): 1})

    def special(self, sym: Sym) -> "GeneratorPolynomial":
        if (sym.kind == "chi" and not self.chi) or (sym.kind == "delta" and not self.delta):
            raise ValueError(f"{sym.kind} is not a generator here")
        return GeneratorPolynomial(self, {(sym,): 1})

    def one(self):
        return GeneratorPolynomial(self, {(): 1})

    def zero(self):
        return GeneratorPolynomial(self, {})

    def constant(self, c):
        return GeneratorPolynomial(self, {(): c})

    # expansion
    def symbol_torus(self, sym: Sym) -> TorusPolynomial:
        hit = self._sym_cache.get(sym)
        if hit is not None:
            return hit
        N = self.torus_n
        if sym.kind == "chi":
            terms = {(1,) * self.n + ((0,) if self.delta else ()) + (0,): 1}
        elif sym.kind == "delta":
            terms = {(0,) * N + (1,): 1}
        else:
            terms = _symbol_terms(sym, self.blocks)
            if self.square:
                terms = {tuple(2 * a for a in m[:-1]) + (m[-1],): c for m, c in terms.items()}
            if self.delta:
                terms = {m[:-1] + (0, m[-1] << 1): c for m, c in terms.items()}
        p = TorusPolynomial(N, terms, self.ring)
        self._sym_cache[sym] = p
        return p

    def monomial_torus(self, key) -> TorusPolynomial:
        hit = self._sym_cache.get(("mono", key))
        if hit is not None:
            return hit
        if not key:
            p = TorusPolynomial.constant(self.torus_n, 1, self.ring)
        else:
            p = self.monomial_torus(key[:-1]) * self.symbol_torus(key[-1])
        self._sym_cache[("mono", key)] = p
        return p

    def expand(self, gp: "GeneratorPolynomial") -> TorusPolynomial:
        out = TorusPolynomial.zero(self.torus_n, self.ring)
        for key, c in gp.terms.items():
            out = out + self.monomial_torus(key).scale(c)
        return out

    # decomposition
    def decompose(self, p: TorusPolynomial, check=True) -> "GeneratorPolynomial":
        """Unique admissible generator expression for an invariant torus polynomial."""
        if p.n != self.torus_n:
            raise VariableMismatch(f"expected {self.torus_n} variable pairs, got {p.n}")
        if p.ring != self.ring:
            if p.ring == QQ:
                p = p.promote()
            else:
                p = p.to_rational()
        out: dict = {}
        for part in self._split_delta(p):
            extra, piece = part
            for sub_extra, sub in self._split_chi(piece):
                plain = self._unsquare(sub)
                for d, hom in plain.homogeneous_parts().items():
                    for key, c in _decompose_blocks(hom, self.blocks, check).items():
                        full = tuple(sorted(key + extra + sub_extra))
                        out[full] = out[full] + c if full in out else c
        return GeneratorPolynomial(self, out)

    def _split_delta(self, p):
        if not self.delta:
            return [((), p)]
        n = self.n
        plain, with_delta = {}, {}
        for m, c in p.terms.items():
            if m[n]:
                raise NotInvariant("the delta slot carries a w-exponent")
            key = m[:n] + (m[-1] >> 1,)
            (with_delta if m[-1] & 1 else plain)[key] = c
        return [((), TorusPolynomial(n, plain, p.ring)), ((DELTA,), TorusPolynomial(n, with_delta, p.ring))]

    def _split_chi(self, p):
        if not self.chi:
            return [((), p)]
        even, odd = {}, {}
        for m, c in p.terms.items():
            parities = {a & 1 for a in m[:-1]}
            if len(parities) > 1:
                raise NotInvariant(f"monomial {m} mixes even and odd exponents")
            if parities == {1}:
                odd[tuple(a - 1 for a in m[:-1]) + (m[-1],)] = c
            else:
                even[m] = c
        n = p.n
        return [((), TorusPolynomial(n, even, p.ring)), ((CHI,), TorusPolynomial(n, odd, p.ring))]

    def _unsquare(self, p):
        if not self.square:
            return p
        out = {}
        for m, c in p.terms.items():
            if any(a & 1 for a in m[:-1]):
                raise NotInvariant(f"monomial {m} has an odd w-exponent")
            out[tuple(a // 2 for a in m[:-1]) + (m[-1],)] = c
        return TorusPolynomial(p.n, out, p.ring, _trusted=True)

    # formatting
    def format_key(self, key) -> str:
        def block_text(syms):
            counts: dict = {}
            for s in syms:
                counts[s] = counts.get(s, 0) + 1
            parts = []
            for s in sorted(counts, key=_display_order):
                name = self.symbol_name(s)
                parts.append(name if counts[s] == 1 else f"{name}^{counts[s]}")
            return "*".join(parts)

        if len(self.blocks) == 1 or not key:
            return block_text(key)
        texts = [block_text([s for s in key if s.block == b]) or "1" for b in range(len(self.blocks))]
        return "(x)".join(texts)


def _display_order(sym):
    # elementary classes first, then u-carrying gammas, then the specials
    rank = {"g": 0, "chi": 2, "delta": 3}[sym.kind]
    return (rank, sym.i > 0, sym.s, sym.i, sym.block)


def _key_order(alg, key):
    return (sum(alg.symbol_degree(s) for s in key), len(key), key)


class GeneratorPolynomial:
    """Formal polynomial in generator symbols with exact coefficients.

    Keys are sorted tuples of :class:`Sym` (with repetition).  Arithmetic is
    formal; use ``alg.decompose(p.expand())`` for the normal form.
    """

    __slots__ = ("alg", "terms")

    def __init__(self, alg: GammaAlgebra, terms=None):
        self.alg = alg
        clean: dict = {}
        for key, c in (terms or {}).items():
            key = tuple(sorted(s for s in key if not (s.kind == "g" and s.s == 0 and s.i == 0)))
            c = coerce(c, alg.ring)
            clean[key] = clean[key] + c if key in clean else c
        if alg.ring == AQ:
            clean = {k: (c.drop_x() if _has_u(k) else c) for k, c in clean.items()}
        self.terms = {k: c for k, c in clean.items() if c}

    def _check(self, other):
        if not isinstance(other, GeneratorPolynomial):
            other = self.alg.constant(other)
        if other.alg != self.alg:
            raise ValueError("generator polynomials over different algebras")
        return other

    def __add__(self, other):
        other = self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return GeneratorPolynomial(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return GeneratorPolynomial(self.alg, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if not isinstance(other, GeneratorPolynomial):
            c = coerce(other, self.alg.ring)
            return GeneratorPolynomial(self.alg, {k: v * c for k, v in self.terms.items()})
        other = self._check(other)
        out: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = tuple(sorted(k1 + k2))
                out[k] = out[k] + c1 * c2 if k in out else c1 * c2
        return GeneratorPolynomial(self.alg, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = self.alg.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, GeneratorPolynomial):
            return NotImplemented
        return self.alg == other.alg and self.terms == other.terms

    def __hash__(self):
        return hash((self.alg, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, key):
        return self.terms.get(tuple(sorted(key)), zero(self.alg.ring))

    def expand(self) -> TorusPolynomial:
        return self.alg.expand(self)

    def degrees(self):
        return {sum(self.alg.symbol_degree(s) for s in k) for k in self.terms}

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _key_order(self.alg, kv[0]))

    def __str__(self):
        return format_generator_polynomial(self)

    def __repr__(self):
        return f"GeneratorPolynomial({self})"

    def to_json(self):
        """Canonical serialisation: terms sorted by generator multiset, coefficients as text."""
        return [
            {"monomial": [[s.kind, s.s, s.i, s.block] for s in key], "coeff": format_coeff(c)}
            for key, c in sorted(self.terms.items())
        ]

    @classmethod
    def from_json(cls, alg, data):
        terms = {}
        for t in data:
            key = tuple(Sym(s, i, b, kind) for kind, s, i, b in t["monomial"])
            terms[key] = parse_coeff(t["coeff"], alg.ring)
        return cls(alg, terms)


def _has_u(key):
    return any((s.kind == "g" and s.i > 0) or s.kind == "delta" for s in key)


def format_generator_polynomial(gp: GeneratorPolynomial) -> str:
    if not gp.terms:
        return "0"
    pieces = []
    for key, c in gp.sorted_terms():
        mono = gp.alg.format_key(key)
        text = describe(c)
        negative = text.startswith("-")
        if negative:
            text = text[1:]
        if mono:
            body = mono if text == "1" else f"{text} {mono}"
        else:
            body = text
        if not pieces:
            pieces.append(("-" if negative else "") + body)
        else:
            pieces.append((" - " if negative else " + ") + body)
    return "".join(pieces)


@lru_cache(maxsize=None)
def algebra(blocks, ring=QQ, family="U", square=False, chi=False, delta=False) -> GammaAlgebra:
    """Shared (cached) algebra instance, so expansion caches are reused."""
    return GammaAlgebra(blocks, ring, family, square, chi, delta)


def decompose(p: TorusPolynomial, n: int = None) -> GeneratorPolynomial:
    """Decompose a symmetric torus polynomial of rank ``n`` into gamma generators."""
    n = p.n if n is None else n
    if n != p.n:
        raise VariableMismatch(f"polynomial has {p.n} variable pairs, not {n}")
    return algebra((n,), p.ring).decompose(p)


def expand(gp: GeneratorPolynomial) -> TorusPolynomial:
    return gp.expand()


def dominant_term(p: TorusPolynomial):
    return p.dominant_term()


def is_admissible(key) -> bool:
    """Admissibility of the flagged (``i >= 1``) gamma factors of a product, per block."""
    by_block: dict = {}
    for s in key:
        if s.kind == "g" and s.i >= 1:
            by_block.setdefault(s.block, []).append(s)
    for flags in by_block.values():
        flags.sort()
        for a, b in zip(flags, flags[1:]):
            if not a.s + a.i < b.s:
                return False
    return True


__all__ = [
    "Sym", "CHI", "DELTA", "gamma", "gamma_expand", "factor_for_dominant", "decompose", "expand",
    "GammaAlgebra", "GeneratorPolynomial", "algebra", "is_admissible", "is_orbit_max",
    "admissible_flags", "NotInvariant", "NotOrbitMaximal", "NotHomogeneous",
]
