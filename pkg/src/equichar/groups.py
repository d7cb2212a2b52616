"""Finite Weyl-group actions on the torus ring and the brute-force invariant oracle."""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product
from math import factorial

from .coeffs import AQ, QQ
from .linalg import RowEchelon
from .torus import TorusPolynomial, VariableMismatch

SIGMA = "Sigma_n"
WREATH = "HyperoctahedralWreath"
EVEN_SIGN = "EvenSignSubgroup"
SIGN_ONLY = "SignOnly"
KINDS = (SIGMA, WREATH, EVEN_SIGN, SIGN_ONLY)


class ResourceLimit(RuntimeError):
    pass


class GroupAction:
    """One of the four Weyl-group actions on ``n`` torus factors.

    Elements are pairs ``(perm, signs)``: ``perm[i] = j`` sends ``w_{i+1}`` to
    ``signs[j] * w_{j+1}`` and ``u_{i+1}`` to ``u_{j+1}``.
    """

    def __init__(self, kind: str, n: int):
        if kind not in KINDS:
            raise ValueError(f"unknown group kind {kind!r}")
        if n < 1:
            raise ValueError("n must be positive")
        self.kind = kind
        self.n = n

    def __repr__(self):
        return f"GroupAction({self.kind!r}, {self.n})"

    def __eq__(self, other):
        return isinstance(other, GroupAction) and (self.kind, self.n) == (other.kind, other.n)

    def __hash__(self):
        return hash((self.kind, self.n))

    def order(self) -> int:
        n = self.n
        return {
            SIGMA: factorial(n),
            WREATH: factorial(n) * 2**n,
            EVEN_SIGN: factorial(n) * 2 ** (n - 1),
            SIGN_ONLY: 2**n,
        }[self.kind]

    def _perms(self):
        if self.kind == SIGN_ONLY:
            return [tuple(range(self.n))]
        return list(permutations(range(self.n)))

    def _signs(self):
        if self.kind == SIGMA:
            return [(1,) * self.n]
        signs = list(product((1, -1), repeat=self.n))
        if self.kind == EVEN_SIGN:
            signs = [s for s in signs if s.count(-1) % 2 == 0]
        return signs

    def elements(self):
        for perm in self._perms():
            for signs in self._signs():
                yield (perm, signs)

    def generators(self):
        """Adjacent transpositions plus the sign changes needed for the kind."""
        n = self.n
        ident = (1,) * n
        gens = []
        if self.kind != SIGN_ONLY:
            for i in range(n - 1):
                perm = list(range(n))
                perm[i], perm[i + 1] = perm[i + 1], perm[i]
                gens.append((tuple(perm), ident))
        idp = tuple(range(n))
        if self.kind == WREATH:
            gens.append((idp, (-1,) + (1,) * (n - 1)))
        elif self.kind == EVEN_SIGN and n >= 2:
            gens.append((idp, (-1, -1) + (1,) * (n - 2)))
        elif self.kind == SIGN_ONLY:
            for i in range(n):
                s = [1] * n
                s[i] = -1
                gens.append((idp, tuple(s)))
        return gens

    def identity(self):
        return (tuple(range(self.n)), (1,) * self.n)


def compose(g, h):
    """Element acting as ``g`` after ``h``."""
    pg, sg = g
    ph, sh = h
    n = len(pg)
    perm = tuple(pg[ph[i]] for i in range(n))
    inv_g = [0] * n
    for i, j in enumerate(pg):
        inv_g[j] = i
    signs = tuple(sg[k] * sh[inv_g[k]] for k in range(n))
    return (perm, signs)


def act_monomial(g, m):
    """Image of a monomial key under ``g`` as ``(sign, key)``."""
    perm, signs = g
    n = len(perm)
    a = [0] * n
    mask = 0
    sign = 1
    src_mask = m[-1]
    for i in range(n):
        j = perm[i]
        ai = m[i]
        a[j] = ai
        if ai & 1 and signs[j] < 0:
            sign = -sign
        if (src_mask >> (n - 1 - i)) & 1:
            mask |= 1 << (n - 1 - j)
    return sign, tuple(a) + (mask,)


def act(g, p: TorusPolynomial) -> TorusPolynomial:
    if len(g[0]) != p.n:
        raise VariableMismatch(f"group element on {len(g[0])} factors applied to n={p.n}")
    out = {}
    for m, c in p.terms.items():
        sign, key = act_monomial(g, m)
        out[key] = c if sign > 0 else -c
    return TorusPolynomial(p.n, out, p.ring, _trusted=True)


def _check(W: GroupAction, p: TorusPolynomial):
    if W.n != p.n:
        raise VariableMismatch(f"group on {W.n} factors, polynomial in {p.n}")


def symmetrize(p: TorusPolynomial, W: GroupAction) -> TorusPolynomial:
    """Orbit sum ``sum_{g in W} g.p``."""
    _check(W, p)
    acc: dict = {}
    for g in W.elements():
        for m, c in p.terms.items():
            sign, key = act_monomial(g, m)
            v = c if sign > 0 else -c
            acc[key] = acc[key] + v if key in acc else v
    return TorusPolynomial(p.n, acc, p.ring)


def is_invariant(p: TorusPolynomial, W: GroupAction) -> bool:
    _check(W, p)
    return all(act(g, p) == p for g in W.generators())


def _monomials(n: int, d: int, n_idem: int, u_free: bool):
    """Exponent keys ``(a, eps)`` of degree ``d`` in ``n`` w's and ``n_idem`` idempotents."""
    def compositions(total, parts):
        if parts == 0:
            if total == 0:
                yield ()
            return
        for first in range(total, -1, -1):
            for rest in compositions(total - first, parts - 1):
                yield (first,) + rest

    eps_choices = [(0,) * n_idem] if u_free else list(product((0, 1), repeat=n_idem))
    for a in compositions(d, n):
        for eps in eps_choices:
            yield a, eps


def _reynolds_rank(W: GroupAction, n: int, d: int, extra: int, u_free: bool) -> int:
    elements = list(W.elements())
    ech = RowEchelon()
    seen = set()
    inv = Fraction(1, len(elements))
    for a, eps in _monomials(n, d, n + extra, u_free):
        if (a, eps) in seen:
            continue
        image: dict = {}
        for perm, signs in elements:
            na = [0] * n
            neps = list(eps)
            sign = 1
            for i in range(n):
                j = perm[i]
                na[j] = a[i]
                neps[j] = eps[i]
                if a[i] & 1 and signs[j] < 0:
                    sign = -sign
            key = (tuple(na), tuple(neps))
            image[key] = image.get(key, 0) + sign * inv
        seen.update(image)
        ech.add(image)
    return ech.rank


def invariant_dimension(W: GroupAction, n: int, d: int, ring: str = QQ, extra_idempotents: int = 0,
                        limit: int = 5_000_000) -> int:
    """Dimension over Q of the ``W``-invariant degree-``d`` piece of the torus ring.

    Computed by exact row reduction of the Reynolds images of all degree-``d``
    monomials.  Over ``A_Q`` the count adds the ``x/2`` component, where every
    idempotent acts as zero.  ``extra_idempotents`` adjoins idempotents with no
    ``w`` partner that the group fixes.
    """
    if W.n != n:
        raise VariableMismatch(f"group on {W.n} factors, ring on {n}")
    if d < 0:
        return 0
    from math import comb

    count = comb(d + n - 1, n - 1) * 2 ** (n + extra_idempotents)
    if W.order() * count > limit:
        raise ResourceLimit(f"|W|*monomials = {W.order() * count} exceeds limit {limit}")
    dim = _reynolds_rank(W, n, d, extra_idempotents, u_free=False)
    if ring == AQ:
        dim += _reynolds_rank(W, n, d, extra_idempotents, u_free=True)
    return dim
