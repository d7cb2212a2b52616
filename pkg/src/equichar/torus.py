"""The idempotent-reduced torus ring ``k[w_i, u_i]/(u_i^2 = u_i)``.

A monomial ``w_1^a_1 ... w_n^a_n u_1^e_1 ... u_n^e_n`` is stored as the tuple
``(a_1, ..., a_n, mask)`` where bit ``n - i`` of ``mask`` is ``e_i``.  Python's
tuple comparison on this key is exactly the lexicographic order on
``(a_1, ..., a_n, e_1, ..., e_n)``, so ``max`` of a set of keys is its dominant
term.

Over the Burnside ring the torus ring is ``A_Q[w_i, u_i]/(u_i^2 = u_i, x u_i)``;
coefficients of monomials carrying some ``u_i`` are kept in the canonical
representative with no ``x`` part.
"""

from __future__ import annotations

from fractions import Fraction
import re

from .coeffs import AQ, QQ, BurnsideCoeff, RingMismatch, coerce, format_coeff, parse_coeff, zero

Monomial = tuple


class VariableMismatch(ValueError):
    pass


class NotHomogeneous(ValueError):
    pass


def monomial(a, eps=None) -> Monomial:
    a = tuple(int(v) for v in a)
    n = len(a)
    eps = eps or (0,) * n
    if len(eps) != n:
        raise VariableMismatch("exponent vectors of different lengths")
    mask = 0
    for i, e in enumerate(eps):
        if e not in (0, 1):
            raise ValueError("idempotent exponents must be 0 or 1")
        if e:
            mask |= 1 << (n - 1 - i)
    return a + (mask,)


def unit_monomial(n: int) -> Monomial:
    return (0,) * n + (0,)


def w_part(m: Monomial) -> tuple:
    return m[:-1]


def u_bits(m: Monomial) -> tuple:
    n = len(m) - 1
    mask = m[-1]
    return tuple((mask >> (n - 1 - i)) & 1 for i in range(n))


def mono_degree(m: Monomial) -> int:
    return sum(m[:-1])


def mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    return tuple(a + b for a, b in zip(m1[:-1], m2[:-1])) + (m1[-1] | m2[-1],)


def _normalise(terms: dict, ring: str) -> dict:
    out = {}
    for m, c in terms.items():
        if ring == AQ and m[-1] and c.qx:
            c = c.drop_x()
        if c:
            out[m] = c
    return out


class TorusPolynomial:
    """Sparse exact polynomial in ``w_1..w_n`` (degree 1) and idempotents ``u_1..u_n``.

    Values are immutable; arithmetic returns new polynomials.
    """

    __slots__ = ("n", "ring", "terms", "_degrees")

    def __init__(self, n: int, terms=None, ring: str = QQ, _trusted=False):
        if n < 0:
            raise ValueError("number of variable pairs must be non-negative")
        if ring not in (QQ, AQ):
            raise ValueError(f"unknown coefficient ring {ring!r}")
        self.n = n
        self.ring = ring
        if _trusted:
            self.terms = terms
        else:
            clean = {}
            for m, c in (terms or {}).items():
                m = tuple(m)
                if len(m) != n + 1:
                    raise VariableMismatch(f"monomial {m} does not have {n} variable pairs")
                if m[-1] >> n:
                    raise VariableMismatch(f"idempotent mask of {m} exceeds {n} variables")
                clean[m] = clean.get(m, zero(ring)) + coerce(c, ring)
            self.terms = _normalise(clean, ring)
        self._degrees = None

    # construction helpers
    @classmethod
    def zero(cls, n, ring=QQ):
        return cls(n, {}, ring, _trusted=True)

    @classmethod
    def constant(cls, n, c, ring=QQ):
        return cls(n, {unit_monomial(n): c}, ring)

    @classmethod
    def w(cls, i, n, ring=QQ):
        a = [0] * n
        a[i - 1] = 1
        return cls(n, {monomial(a): 1}, ring)

    @classmethod
    def u(cls, i, n, ring=QQ):
        eps = [0] * n
        eps[i - 1] = 1
        return cls(n, {monomial([0] * n, eps): 1}, ring)

    # queries
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def coefficient(self, m):
        return self.terms.get(tuple(m), zero(self.ring))

    def sorted_terms(self):
        """Terms in descending monomial order (the canonical serialisation order)."""
        return sorted(self.terms.items(), key=lambda kv: kv[0], reverse=True)

    def degrees(self) -> frozenset:
        if self._degrees is None:
            self._degrees = frozenset(mono_degree(m) for m in self.terms)
        return self._degrees

    def degree(self):
        """Common degree of all terms; raises :class:`NotHomogeneous` on mixed degrees."""
        degs = self.degrees()
        if len(degs) > 1:
            a, b = sorted(degs)[:2]
            raise NotHomogeneous(f"polynomial mixes degrees {a} and {b}")
        return next(iter(degs)) if degs else 0

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    def homogeneous_parts(self) -> dict:
        parts: dict = {}
        for m, c in self.terms.items():
            parts.setdefault(mono_degree(m), {})[m] = c
        return {d: TorusPolynomial(self.n, t, self.ring, _trusted=True) for d, t in sorted(parts.items())}

    def is_u_free(self):
        return all(m[-1] == 0 for m in self.terms)

    def dominant_term(self) -> Monomial:
        if not self.terms:
            raise ValueError("the zero polynomial has no dominant term")
        self.degree()
        return max(self.terms)

    # arithmetic
    def _check(self, other):
        if not isinstance(other, TorusPolynomial):
            raise TypeError(f"expected a TorusPolynomial, got {type(other).__name__}")
        if other.n != self.n:
            raise VariableMismatch(f"{self.n} vs {other.n} variable pairs")
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring} coefficients")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            v = c if v is None else v + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return TorusPolynomial(self.n, out, self.ring, _trusted=True)

    def __neg__(self):
        return TorusPolynomial(self.n, {m: -c for m, c in self.terms.items()}, self.ring, _trusted=True)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        """Multiply by a scalar from the coefficient ring."""
        c = coerce(c, self.ring)
        if not c:
            return TorusPolynomial.zero(self.n, self.ring)
        out = {m: v * c for m, v in self.terms.items()}
        return TorusPolynomial(self.n, _normalise(out, self.ring), self.ring, _trusted=True)

    def __mul__(self, other):
        if not isinstance(other, TorusPolynomial):
            return self.scale(other)
        self._check(other)
        out: dict = {}
        aq = self.ring == AQ
        for m1, c1 in self.terms.items():
            a1, k1 = m1[:-1], m1[-1]
            for m2, c2 in other.terms.items():
                key = tuple(x + y for x, y in zip(a1, m2[:-1])) + (k1 | m2[-1],)
                c = c1 * c2
                if key in out:
                    out[key] = out[key] + c
                else:
                    out[key] = c
        if aq:
            return TorusPolynomial(self.n, _normalise(out, AQ), AQ, _trusted=True)
        return TorusPolynomial(self.n, {m: c for m, c in out.items() if c}, QQ, _trusted=True)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not defined")
        result = TorusPolynomial.constant(self.n, 1, self.ring)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, TorusPolynomial):
            return NotImplemented
        return self.n == other.n and self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, self.ring, frozenset(self.terms.items())))

    def promote(self) -> "TorusPolynomial":
        """Embed a rational polynomial into the Burnside-coefficient ring."""
        if self.ring == AQ:
            return self
        return TorusPolynomial(self.n, {m: BurnsideCoeff(c) for m, c in self.terms.items()}, AQ)

    def to_rational(self) -> "TorusPolynomial":
        if self.ring == QQ:
            return self
        return TorusPolynomial(self.n, {m: coerce(c, QQ) for m, c in self.terms.items()}, QQ)

    def __repr__(self):
        return f"TorusPolynomial(n={self.n}, ring={self.ring!r}, {format_polynomial(self)!r})"

    def __str__(self):
        return format_polynomial(self)


# canonical text syntax

def _format_monomial(m: Monomial) -> str:
    parts = []
    for i, a in enumerate(m[:-1], start=1):
        if a == 1:
            parts.append(f"w{i}")
        elif a > 1:
            parts.append(f"w{i}^{a}")
    for i, e in enumerate(u_bits(m), start=1):
        if e:
            parts.append(f"u{i}")
    return "*".join(parts)


def format_polynomial(p: TorusPolynomial) -> str:
    if not p.terms:
        return "0"
    out = []
    for m, c in p.sorted_terms():
        negative = False
        if isinstance(c, Fraction) and c < 0:
            negative, c = True, -c
        elif isinstance(c, BurnsideCoeff) and c.qx == 0 and c.q < 0:
            negative, c = True, -c
        body = _format_monomial(m)
        text = format_coeff(c)
        if body:
            term = body if text == "1" else f"{text}*{body}"
        else:
            term = text
        if not out:
            out.append(("-" if negative else "") + term)
        else:
            out.append((" - " if negative else " + ") + term)
    return "".join(out)


_TERM_SPLIT = re.compile(r"\s*([+-])\s*(?![^()]*\))")
_VAR = re.compile(r"^([wu])(\d+)(?:\^(\d+))?$")


def parse_polynomial(text: str, n: int, ring: str = QQ) -> TorusPolynomial:
    """Inverse of :func:`format_polynomial`; ``parse_polynomial(str(p), p.n, p.ring) == p``."""
    text = text.strip()
    if not text:
        raise ValueError("empty polynomial text")
    if text[0] not in "+-":
        text = "+" + text
    pieces = _TERM_SPLIT.split(text)
    terms: dict = {}
    # pieces: ['', sign, term, sign, term, ...]
    if pieces[0].strip():
        raise ValueError(f"cannot parse {text!r}")
    for sign, body in zip(pieces[1::2], pieces[2::2]):
        body = body.strip()
        if not body:
            raise ValueError(f"dangling sign in {text!r}")
        factors = _split_factors(body)
        coeff = coerce(1, ring)
        a = [0] * n
        eps = [0] * n
        for f in factors:
            vm = _VAR.match(f)
            if vm:
                idx = int(vm.group(2))
                if not 1 <= idx <= n:
                    raise VariableMismatch(f"variable {f} outside 1..{n}")
                power = int(vm.group(3) or 1)
                if vm.group(1) == "w":
                    a[idx - 1] += power
                else:
                    eps[idx - 1] = 1
            elif f == "x":
                if ring != AQ:
                    raise RingMismatch("x appears in a rational polynomial")
                coeff = coeff * BurnsideCoeff(0, 1)
            elif f == "y":
                if ring != AQ:
                    raise RingMismatch("y appears in a rational polynomial")
                coeff = coeff * BurnsideCoeff(1, Fraction(-1, 2))
            else:
                coeff = coeff * parse_coeff(f, ring)
        if sign == "-":
            coeff = -coeff
        m = monomial(a, eps)
        terms[m] = terms.get(m, zero(ring)) + coeff
    return TorusPolynomial(n, terms, ring)


def _split_factors(body: str) -> list:
    factors, depth, cur = [], 0, []
    for ch in body:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "*" and depth == 0:
            factors.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    factors.append("".join(cur).strip())
    if any(not f for f in factors):
        raise ValueError(f"empty factor in {body!r}")
    return factors
